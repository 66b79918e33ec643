"""The outer segmentation loop.

One iteration is: region statistics -> one semi-implicit evolution step ->
(per cadence) reinitialization toward a signed distance function -> the
stationarity check.  The loop stops when the near-interface change Q drops
below dt*h^2 or when the iteration budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalBlowupError, ParameterError
from .evolve import Params, evolve_step
from .grid import LevelSetField, ScalarField, require_same_shape
from .region import RegionStats, compute_stats, curve_length, total_energy
from .reinit import reinitialize


@dataclass(frozen=True)
class InitSpec:
    """Initial contour: a circle, a rectangle, or a checkerboard of seeds.

    Circle: ``center`` is (cx, cy) with cx along columns, cy along rows;
    phi is the exact signed distance r - dist(center), positive inside.
    Rectangle: ``corners`` are (x0, y0, x1, y1); exact SDF of the boundary,
    positive inside.  Checkerboard: sin(pi*x/period) * sin(pi*y/period),
    which seeds many small contours across the whole grid.
    """

    kind: str = "circle"
    center: tuple[float, float] | None = None
    radius: float | None = None
    corners: tuple[float, float, float, float] | None = None
    period: int | None = None


@dataclass(frozen=True)
class StopCheck:
    q: float
    m: int
    threshold: float
    converged: bool


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    c1: float
    c2: float
    length: float
    area_inside: float
    energy: float
    q: float
    m: int


@dataclass
class SegmentationResult:
    phi: LevelSetField
    mask: np.ndarray
    contour: list[tuple[int, int]]
    iterations_used: int
    converged: bool
    trace: list[IterationRecord]


def default_init_spec(width: int, height: int) -> InitSpec:
    """Centered circle with radius a third of the shorter side."""
    return InitSpec(
        kind="circle",
        center=((width - 1) / 2.0, (height - 1) / 2.0),
        radius=min(width, height) / 3.0,
    )


def init_phi(width: int, height: int, h: float, spec: InitSpec) -> LevelSetField:
    """Build the initial level-set field for a grid of the given size."""
    jj, ii = np.meshgrid(np.arange(width, dtype=np.float64),
                         np.arange(height, dtype=np.float64))
    if spec.kind == "circle":
        if spec.center is None or spec.radius is None:
            raise ParameterError("circle init requires center and radius")
        cx, cy = spec.center
        if not spec.radius > 0:
            raise ParameterError(f"circle radius must be > 0, got {spec.radius}")
        if not (0 <= cx <= width - 1 and 0 <= cy <= height - 1):
            raise ParameterError(f"circle center {spec.center} outside the grid")
        dist = np.sqrt((jj - cx) ** 2 + (ii - cy) ** 2)
        values = h * (spec.radius - dist)
    elif spec.kind == "rectangle":
        if spec.corners is None:
            raise ParameterError("rectangle init requires corners")
        x0, y0, x1, y1 = spec.corners
        if not (x0 < x1 and y0 < y1):
            raise ParameterError(f"degenerate rectangle corners {spec.corners}")
        dx = np.maximum(x0 - jj, jj - x1)
        dy = np.maximum(y0 - ii, ii - y1)
        outside = np.hypot(np.maximum(dx, 0.0), np.maximum(dy, 0.0))
        inside = np.minimum(np.maximum(dx, dy), 0.0)
        values = -h * (outside + inside)
    elif spec.kind == "checkerboard":
        if spec.period is None or spec.period < 2:
            raise ParameterError(f"checkerboard period must be >= 2, got {spec.period}")
        values = np.sin(np.pi * jj / spec.period) * np.sin(np.pi * ii / spec.period)
    else:
        raise ParameterError(f"unknown init kind {spec.kind!r}")
    return LevelSetField(ScalarField(values, h))


def has_converged(phi_n: LevelSetField, phi_next: LevelSetField, params: Params) -> StopCheck:
    """Stationarity test on the near-interface band |phi_n| < h.

    Q is the summed absolute change of phi over the band, compared against
    dt*h^2.  An empty band counts as converged (the contour has vanished
    entirely; nothing is left to move).
    """
    require_same_shape(phi_n, phi_next, "consecutive level sets")
    h = params.h
    band = np.abs(phi_n.values) < h
    m = int(band.sum())
    threshold = params.dt * h * h
    if m == 0:
        return StopCheck(q=0.0, m=0, threshold=threshold, converged=True)
    q = float(np.abs(phi_next.values - phi_n.values)[band].sum())
    return StopCheck(q=q, m=m, threshold=threshold, converged=q <= threshold)


def extract_contour(phi: LevelSetField) -> list[tuple[int, int]]:
    """Pixels where the sign of phi differs from the right or down neighbour.

    Zero is treated as positive (on the contour means inside), so a field of
    one strict sign yields an empty list.  Coordinates are (row, col).
    """
    s = phi.values >= 0
    edge = np.zeros_like(s)
    edge[:, :-1] |= s[:, :-1] != s[:, 1:]
    edge[:-1, :] |= s[:-1, :] != s[1:, :]
    return [(int(i), int(j)) for i, j in np.argwhere(edge)]


def mask_of(phi: LevelSetField) -> np.ndarray:
    """Binary inside-mask, phi >= 0."""
    return phi.values >= 0


def segment(u0: ScalarField, params: Params, spec: InitSpec | None = None) -> SegmentationResult:
    """Run the full segmentation loop on a [0, 1] intensity image."""
    if spec is None:
        spec = default_init_spec(u0.width, u0.height)
    phi = init_phi(u0.width, u0.height, params.h, spec)

    trace: list[IterationRecord] = []
    converged = False
    iterations = 0
    for n in range(1, params.max_iters + 1):
        stats = compute_stats(u0, phi, params.eps)
        energy = total_energy(u0, phi, params, stats)
        try:
            phi_next = evolve_step(phi, u0, params, stats, length=stats.length)
            if n % params.reinit_every == 0 and params.reinit_steps > 0:
                phi_next = reinitialize(phi_next, params.reinit_steps, params.dtau)
        except NumericalBlowupError as err:
            err.iteration = n
            raise
        check = has_converged(phi, phi_next, params)
        trace.append(IterationRecord(
            iteration=n,
            c1=stats.c1,
            c2=stats.c2,
            length=stats.length,
            area_inside=stats.area_inside,
            energy=energy,
            q=check.q,
            m=check.m,
        ))
        phi = phi_next
        iterations = n
        if check.converged:
            converged = True
            break

    return SegmentationResult(
        phi=phi,
        mask=mask_of(phi),
        contour=extract_contour(phi),
        iterations_used=iterations,
        converged=converged,
        trace=trace,
    )
