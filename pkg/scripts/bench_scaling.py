#!/usr/bin/env python3
"""Report per-iteration cost of the evolution + reinitialization pipeline
across grid sizes (interleaved timing, median of warm iterations).

Usage:
    python3 scripts/bench_scaling.py [--sizes 64 128 256 512] [--iters 40]
"""

import argparse
import statistics
import time

from cvseg.evolve import Params, evolve_step
from cvseg.imaging import synth_disk
from cvseg.region import compute_stats
from cvseg.reinit import reinitialize
from cvseg.segment import InitSpec, init_phi


def setup(n):
    img, _ = synth_disk(n, n, ((n - 1) / 2, (n - 1) / 2), n * 0.22, 1.0, 0.0)
    spec = InitSpec(kind="circle", center=((n - 1) / 2, (n - 1) / 2), radius=n / 3.0)
    return [img, Params(dt=0.01), init_phi(n, n, 1.0, spec)]


def one_iteration(state):
    img, params, phi = state
    t0 = time.perf_counter()
    stats = compute_stats(img, phi, params.eps)
    phi = evolve_step(phi, img, params, stats, length=stats.length)
    phi = reinitialize(phi, params.reinit_steps, params.dtau)
    elapsed = time.perf_counter() - t0
    state[2] = phi
    return elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--iters", type=int, default=40)
    args = ap.parse_args()

    states = [setup(n) for n in args.sizes]
    times = [[] for _ in args.sizes]
    for _ in range(args.iters):
        for state, acc in zip(states, times):
            acc.append(one_iteration(state))

    base = None
    print(f"{'size':>6} {'median ms/iter':>15} {'vs previous':>12}")
    for n, acc in zip(args.sizes, times):
        med = statistics.median(acc[len(acc) // 8:])
        ratio = "" if base is None else f"{med / base:10.2f}x"
        print(f"{n:>6} {med * 1e3:>15.3f} {ratio:>12}")
        base = med


if __name__ == "__main__":
    main()
