"""Two-phase active-contour image segmentation via level-set evolution.

The contour is the zero level set of a scalar field phi (positive inside);
it is evolved by gradient descent on a two-mean partition energy with a
length penalty, using a semi-implicit finite-difference scheme, periodic
reinitialization of phi toward a signed distance function, and a
near-interface stationarity test.
"""

from .errors import (
    CvsegError,
    InputError,
    NumericalBlowupError,
    OutputError,
    ParameterError,
    ShapeError,
)
from .evolve import Params
from .grid import LevelSetField, ScalarField
from .region import RegionStats, compute_stats
from .segment import InitSpec, SegmentationResult, segment

__all__ = [
    "CvsegError",
    "InputError",
    "NumericalBlowupError",
    "OutputError",
    "ParameterError",
    "ShapeError",
    "Params",
    "LevelSetField",
    "ScalarField",
    "RegionStats",
    "compute_stats",
    "InitSpec",
    "SegmentationResult",
    "segment",
]

__version__ = "0.1.0"
