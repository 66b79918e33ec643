"""2-D scalar fields and finite-difference primitives.

Fields are stored row-major as float64 arrays of shape (height, width).
Index convention follows the stencil notation used throughout the evolution
and reinitialization schemes: ``i`` is the row index (the "x" axis of the
difference operators, so that x-neighbours are ``[i-1, j]`` / ``[i+1, j]``)
and ``j`` is the column index (the "y" axis).

Out-of-range neighbour access clamps indices to the array edge, which
realizes the homogeneous Neumann boundary condition of the evolution PDE.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ShapeError

MIN_SIZE = 3


@dataclass
class ScalarField:
    """A real-valued grid with uniform spacing ``h`` in both directions."""

    values: np.ndarray
    spacing_h: float = 1.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ShapeError(f"expected a 2-D array, got ndim={self.values.ndim}")
        if self.height < MIN_SIZE or self.width < MIN_SIZE:
            raise ParameterError(
                f"grid must be at least {MIN_SIZE}x{MIN_SIZE}, got "
                f"{self.height}x{self.width}"
            )
        if not self.spacing_h > 0:
            raise ParameterError(f"spacing_h must be > 0, got {self.spacing_h}")
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("field contains non-finite values")

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def copy(self) -> "ScalarField":
        return ScalarField(self.values.copy(), self.spacing_h)

    def like(self, values: np.ndarray) -> "ScalarField":
        """New field with the same spacing but different values."""
        return ScalarField(values, self.spacing_h)


@dataclass
class LevelSetField:
    """A scalar field interpreted as a level-set function.

    Sign convention: positive values are inside the contour, negative values
    outside, zero exactly on it.
    """

    field: ScalarField

    @property
    def values(self) -> np.ndarray:
        return self.field.values

    @property
    def spacing_h(self) -> float:
        return self.field.spacing_h

    @property
    def shape(self) -> tuple[int, int]:
        return self.field.shape

    def copy(self) -> "LevelSetField":
        return LevelSetField(self.field.copy())

    def like(self, values: np.ndarray) -> "LevelSetField":
        return LevelSetField(self.field.like(values))


def require_same_shape(a, b, what="fields"):
    if a.shape != b.shape:
        raise ShapeError(f"{what} have mismatched shapes {a.shape} vs {b.shape}")


def sample_clamped(f: ScalarField, i: int, j: int) -> float:
    """Value at (i, j) with indices clamped to the grid edges."""
    v = f.values
    ic = min(max(i, 0), f.height - 1)
    jc = min(max(j, 0), f.width - 1)
    return float(v[ic, jc])


def shifted(values: np.ndarray, di: int, dj: int) -> np.ndarray:
    """Whole-array neighbour lookup ``out[i, j] = in[i+di, j+dj]`` with
    edge-clamped indices.  Vectorized counterpart of :func:`sample_clamped`."""
    h, w = values.shape
    rows = np.clip(np.arange(h) + di, 0, h - 1)
    cols = np.clip(np.arange(w) + dj, 0, w - 1)
    return values[np.ix_(rows, cols)]


def diff(f: ScalarField, axis: str, scheme: str, i: int, j: int) -> float:
    """One first-derivative estimate at a single grid point.

    ``axis`` is "x" (varies i) or "y" (varies j); ``scheme`` is one of
    "forward", "backward", "central".  Neighbours are edge-clamped.
    """
    if axis == "x":
        di, dj = 1, 0
    elif axis == "y":
        di, dj = 0, 1
    else:
        raise ParameterError(f"axis must be 'x' or 'y', got {axis!r}")
    h = f.spacing_h
    here = sample_clamped(f, i, j)
    nxt = sample_clamped(f, i + di, j + dj)
    prv = sample_clamped(f, i - di, j - dj)
    if scheme == "forward":
        return (nxt - here) / h
    if scheme == "backward":
        return (here - prv) / h
    if scheme == "central":
        return (nxt - prv) / (2.0 * h)
    raise ParameterError(f"unknown scheme {scheme!r}")


def gradient_central(f: ScalarField) -> tuple[np.ndarray, np.ndarray]:
    """Central-difference gradient (d/dx, d/dy) over the whole grid."""
    v = f.values
    h = f.spacing_h
    gx = (shifted(v, 1, 0) - shifted(v, -1, 0)) / (2.0 * h)
    gy = (shifted(v, 0, 1) - shifted(v, 0, -1)) / (2.0 * h)
    return gx, gy
