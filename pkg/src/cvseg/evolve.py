"""One semi-implicit time step of the contour-evolution PDE.

The update solves, pointwise, the linearized scheme

    phi'[i,j] * (1 + (dt/h) * d(phi) * mu * m * (C1+C2+C3+C4))
        = phi[i,j]
          + (dt/h) * d(phi) * mu * m * (C1*phi[i+1,j] + C2*phi[i-1,j]
                                        + C3*phi[i,j+1] + C4*phi[i,j-1])
          - dt * d(phi) * (nu + lambda1*(u0-c1)^2 - lambda2*(u0-c2)^2)

where d is the regularized delta, m = p * L^(p-1) is the derivative factor
of the Length^p penalty, and C1..C4 are the reciprocal square roots of
one-sided gradient-magnitude estimates around the pixel.  Each square root
gets an eta^2 term added so flat regions yield 1/eta instead of infinity.

Neighbours are read from phi^n only (a single Jacobi sweep), so the update
is a pure function of the previous field and can be evaluated in any pixel
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalBlowupError, ParameterError
from .grid import LevelSetField, ScalarField, require_same_shape, sample_clamped
from .region import RegionStats, curve_length
from .regularize import delta_eps

DEFAULT_ETA = 1e-8
DT_CAP = 5.0


def default_dt(mu: float, h: float) -> float:
    """Stability-motivated default time step: 0.5*h^2/mu, capped at 5."""
    if mu > 0:
        return min(0.5 * h * h / mu, DT_CAP)
    return 0.5


@dataclass
class Params:
    """All model and scheme constants for a segmentation run.

    ``dt`` and ``dtau`` may be left as None to pick defaults derived from
    ``mu`` and ``h`` (the sources never state either step size).
    """

    mu: float = 0.2
    nu: float = 0.0
    lambda1: float = 1.0
    lambda2: float = 1.0
    p: int = 1
    eps: float = 1.0
    h: float = 1.0
    dt: float | None = None
    dtau: float | None = None
    max_iters: int = 500
    reinit_every: int = 1
    reinit_steps: int = 10
    eta: float = DEFAULT_ETA

    def __post_init__(self):
        if self.dt is None:
            self.dt = default_dt(self.mu, self.h)
        if self.dtau is None:
            self.dtau = 0.5 * self.h
        if self.mu < 0:
            raise ParameterError(f"mu must be >= 0, got {self.mu}")
        if self.nu < 0:
            raise ParameterError(f"nu must be >= 0, got {self.nu}")
        if not (self.lambda1 > 0 and self.lambda2 > 0):
            raise ParameterError("lambda1 and lambda2 must be > 0")
        if not (isinstance(self.p, int) and self.p >= 1):
            raise ParameterError(f"p must be an integer >= 1, got {self.p}")
        for name in ("eps", "h", "dt", "dtau", "eta"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be > 0, got {getattr(self, name)}")
        if not (isinstance(self.max_iters, int) and self.max_iters >= 1):
            raise ParameterError(f"max_iters must be an integer >= 1, got {self.max_iters}")
        if not (isinstance(self.reinit_every, int) and self.reinit_every >= 1):
            raise ParameterError(f"reinit_every must be an integer >= 1")
        if not (isinstance(self.reinit_steps, int) and self.reinit_steps >= 0):
            raise ParameterError(f"reinit_steps must be an integer >= 0")


@dataclass(frozen=True)
class CoefficientStencil:
    c1_coef: float
    c2_coef: float
    c3_coef: float
    c4_coef: float


def stencil_coefficients(phi: LevelSetField, i: int, j: int, eta: float) -> CoefficientStencil:
    """C1..C4 at one pixel, with eta^2 added under each square root."""
    f = phi.field

    def at(di, dj):
        return sample_clamped(f, i + di, j + dj)

    p00 = at(0, 0)
    e2 = eta * eta
    c1 = 1.0 / np.sqrt((at(1, 0) - p00) ** 2 + (at(0, 1) - at(0, -1)) ** 2 / 4.0 + e2)
    c2 = 1.0 / np.sqrt((p00 - at(-1, 0)) ** 2 + (at(-1, 0) - at(-1, -1)) ** 2 / 4.0 + e2)
    c3 = 1.0 / np.sqrt((at(1, 0) - at(-1, 0)) ** 2 / 4.0 + (at(0, 1) - p00) ** 2 + e2)
    c4 = 1.0 / np.sqrt((at(1, -1) - at(-1, -1)) ** 2 / 4.0 + (p00 - at(0, -1)) ** 2 + e2)
    return CoefficientStencil(float(c1), float(c2), float(c3), float(c4))


# Row-strip height for the vectorized sweeps: keeps every temporary array of
# a strip inside L2 so per-pixel cost stays flat as the grid grows.
def _strip_rows(width: int) -> int:
    return max(4, 4096 // max(width, 1))


def _stencil_arrays(v: np.ndarray, eta: float):
    """Vectorized C1..C4 over the whole grid (edge-clamped neighbours)."""
    e2 = eta * eta
    pad = np.pad(v, 1, mode="edge")
    n_ip = pad[2:, 1:-1]       # phi[i+1, j]
    n_im = pad[:-2, 1:-1]      # phi[i-1, j]
    n_jp = pad[1:-1, 2:]       # phi[i, j+1]
    n_jm = pad[1:-1, :-2]      # phi[i, j-1]
    n_im_jm = pad[:-2, :-2]
    n_ip_jm = pad[2:, :-2]
    c1 = 1.0 / np.sqrt((n_ip - v) ** 2 + (n_jp - n_jm) ** 2 / 4.0 + e2)
    c2 = 1.0 / np.sqrt((v - n_im) ** 2 + (n_im - n_im_jm) ** 2 / 4.0 + e2)
    c3 = 1.0 / np.sqrt((n_ip - n_im) ** 2 / 4.0 + (n_jp - v) ** 2 + e2)
    c4 = 1.0 / np.sqrt((n_ip_jm - n_im_jm) ** 2 / 4.0 + (v - n_jm) ** 2 + e2)
    return c1, c2, c3, c4, n_ip, n_im, n_jp, n_jm


def length_factor(length: float, p: int) -> float:
    """Derivative factor p * length^(p-1) of the Length^p penalty.

    For p = 1 this is identically 1, including at length 0 (0^0 := 1).
    """
    if length < 0:
        raise ParameterError(f"length must be >= 0, got {length}")
    if p == 1:
        return 1.0
    return float(p) * length ** (p - 1)


def evolve_step(
    phi_n: LevelSetField,
    u0: ScalarField,
    params: Params,
    stats: RegionStats,
    length: float | None = None,
) -> LevelSetField:
    """Advance phi by one time step.

    ``stats`` must have been computed from (u0, phi_n).  ``length`` lets the
    caller reuse an already-computed L(phi_n); for p = 1 it is irrelevant.
    """
    require_same_shape(phi_n, u0, "level set and image")
    v = phi_n.values
    h = phi_n.spacing_h
    dt = params.dt

    if params.p == 1:
        m = 1.0
    else:
        if length is None:
            length = curve_length(phi_n, params.eps)
        m = length_factor(length, params.p)

    e2 = params.eta * params.eta
    pad = np.pad(v, 1, mode="edge")
    u = u0.values
    out = np.empty_like(v)
    height, width = v.shape
    for r0 in range(0, height, _strip_rows(width)):
        r1 = min(r0 + _strip_rows(width), height)
        c = v[r0:r1]
        n_ip = pad[r0 + 2:r1 + 2, 1:-1]
        n_im = pad[r0:r1, 1:-1]
        n_jp = pad[r0 + 1:r1 + 1, 2:]
        n_jm = pad[r0 + 1:r1 + 1, :-2]
        n_im_jm = pad[r0:r1, :-2]
        n_ip_jm = pad[r0 + 2:r1 + 2, :-2]
        c1a = 1.0 / np.sqrt((n_ip - c) ** 2 + (n_jp - n_jm) ** 2 / 4.0 + e2)
        c2a = 1.0 / np.sqrt((c - n_im) ** 2 + (n_im - n_im_jm) ** 2 / 4.0 + e2)
        c3a = 1.0 / np.sqrt((n_ip - n_im) ** 2 / 4.0 + (n_jp - c) ** 2 + e2)
        c4a = 1.0 / np.sqrt((n_ip_jm - n_im_jm) ** 2 / 4.0 + (c - n_jm) ** 2 + e2)
        dlt = delta_eps(c, params.eps)
        k = (dt / h) * dlt * params.mu * m
        us = u[r0:r1]
        force = params.nu + params.lambda1 * (us - stats.c1) ** 2 \
            - params.lambda2 * (us - stats.c2) ** 2
        numer = c + k * (c1a * n_ip + c2a * n_im + c3a * n_jp + c4a * n_jm) \
            - dt * dlt * force
        denom = 1.0 + k * (c1a + c2a + c3a + c4a)
        out[r0:r1] = numer / denom

    if not np.all(np.isfinite(out)):
        bad = np.argwhere(~np.isfinite(out))[0]
        raise NumericalBlowupError(
            f"non-finite level-set value at pixel ({bad[0]}, {bad[1]})",
            pixel=(int(bad[0]), int(bad[1])),
        )
    return phi_n.like(out)


def curvature(phi: LevelSetField, i: int, j: int, eta: float) -> float:
    """Diagnostic curvature of the level line through pixel (i, j).

    Standard central second-difference stencils; the 3/2-power denominator
    base gets eta^2 added to stay finite on flat fields.  The evolution
    itself uses the C1..C4 splitting, not this operator.
    """
    f = phi.field
    h = phi.spacing_h

    def at(di, dj):
        return sample_clamped(f, i + di, j + dj)

    p00 = at(0, 0)
    fx = (at(1, 0) - at(-1, 0)) / (2.0 * h)
    fy = (at(0, 1) - at(0, -1)) / (2.0 * h)
    fxx = (at(1, 0) - 2.0 * p00 + at(-1, 0)) / (h * h)
    fyy = (at(0, 1) - 2.0 * p00 + at(0, -1)) / (h * h)
    fxy = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h)
    numer = fxx * fy * fy - 2.0 * fxy * fx * fy + fyy * fx * fx
    denom = (fx * fx + fy * fy + eta * eta) ** 1.5
    return float(numer / denom)
