"""Region statistics and the segmentation energy.

All quantities are discretized sums over the grid weighted by the
regularized Heaviside/delta:

    c1 = sum(u0 * H_eps(phi)) / sum(H_eps(phi))
    c2 = sum(u0 * (1 - H_eps(phi))) / sum(1 - H_eps(phi))
    L  = sum(d_eps(phi) * |grad phi|) * h^2
    A  = sum(H_eps(phi)) * h^2

The outside weight is (1 - H_eps(phi)), i.e. the complement of the inside
weight, so that the two regions partition the domain exactly.

The energy is

    F = mu * L^p + nu * A
        + lambda1 * sum((u0 - c1)^2 * H_eps(phi)) * h^2
        + lambda2 * sum((u0 - c2)^2 * (1 - H_eps(phi))) * h^2
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import LevelSetField, ScalarField, gradient_central, require_same_shape
from .regularize import delta_eps, heaviside_eps

# A phase whose total weight falls below this fraction of the pixel count is
# treated as vanished; its mean falls back to the global image mean.
DEGENERATE_WEIGHT_FRACTION = 1e-8


@dataclass(frozen=True)
class RegionAverages:
    c1: float
    c2: float
    degenerate_inside: bool = False
    degenerate_outside: bool = False


@dataclass(frozen=True)
class RegionStats:
    """Per-iteration summary of the two-phase partition induced by phi."""

    c1: float
    c2: float
    length: float
    area_inside: float
    area_outside: float


def region_averages(u0: ScalarField, phi: LevelSetField, eps: float) -> RegionAverages:
    """Mean intensity inside and outside the contour.

    If one phase has (almost) vanished, its mean is undefined; the global
    image mean is substituted and the corresponding degenerate flag set, so
    the evolution loop can keep running.
    """
    require_same_shape(u0, phi, "image and level set")
    w_in = heaviside_eps(phi.values, eps)
    w_out = 1.0 - w_in
    u = u0.values
    floor = DEGENERATE_WEIGHT_FRACTION * u.size
    global_mean = float(u.mean())

    den_in = float(w_in.sum())
    den_out = float(w_out.sum())
    degen_in = den_in < floor
    degen_out = den_out < floor
    c1 = global_mean if degen_in else float((u * w_in).sum() / den_in)
    c2 = global_mean if degen_out else float((u * w_out).sum() / den_out)
    return RegionAverages(c1, c2, degen_in, degen_out)


def curve_length(phi: LevelSetField, eps: float) -> float:
    """Length of the zero level set, L = sum(d_eps(phi)|grad phi|) h^2."""
    gx, gy = gradient_central(phi.field)
    grad_mag = np.sqrt(gx * gx + gy * gy)
    h = phi.spacing_h
    return float((delta_eps(phi.values, eps) * grad_mag).sum() * h * h)


def region_area(phi: LevelSetField, eps: float) -> float:
    """Area of the inside region, A = sum(H_eps(phi)) h^2."""
    h = phi.spacing_h
    return float(heaviside_eps(phi.values, eps).sum() * h * h)


def compute_stats(u0: ScalarField, phi: LevelSetField, eps: float) -> RegionStats:
    """All region statistics for one (u0, phi) pair."""
    avg = region_averages(u0, phi, eps)
    h = phi.spacing_h
    total = phi.values.size * h * h
    area_in = region_area(phi, eps)
    return RegionStats(
        c1=avg.c1,
        c2=avg.c2,
        length=curve_length(phi, eps),
        area_inside=area_in,
        area_outside=total - area_in,
    )


def total_energy(u0: ScalarField, phi: LevelSetField, params, stats: RegionStats) -> float:
    """Value of the segmentation energy for a partition with known stats."""
    require_same_shape(u0, phi, "image and level set")
    w_in = heaviside_eps(phi.values, params.eps)
    w_out = 1.0 - w_in
    u = u0.values
    h2 = phi.spacing_h ** 2
    data1 = float(((u - stats.c1) ** 2 * w_in).sum() * h2)
    data2 = float(((u - stats.c2) ** 2 * w_out).sum() * h2)
    return (
        params.mu * stats.length ** params.p
        + params.nu * stats.area_inside
        + params.lambda1 * data1
        + params.lambda2 * data2
    )
