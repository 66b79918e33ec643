"""Smooth approximations of the Heaviside step and Dirac delta.

    H_eps(x) = 1/2 * (1 + (2/pi) * arctan(x / eps))
    d_eps(x) = (1/pi) * eps / (eps^2 + x^2)

d_eps is the exact derivative of H_eps.  Both have global support: d_eps is
strictly positive for every finite x, which is what lets the evolution act
on pixels far from the current contour (and detect interior objects).  No
truncation is applied far from zero.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise ParameterError(f"eps must be > 0, got {eps}")


def heaviside_eps(x, eps: float):
    """Regularized Heaviside; strictly increasing, H(-x) = 1 - H(x)."""
    _check_eps(eps)
    x = np.asarray(x, dtype=np.float64)
    out = 0.5 * (1.0 + (2.0 / np.pi) * np.arctan(x / eps))
    return float(out) if out.ndim == 0 else out


def delta_eps(x, eps: float):
    """Regularized Dirac delta; even, positive, peak 1/(pi*eps) at x = 0."""
    _check_eps(eps)
    x = np.asarray(x, dtype=np.float64)
    out = (eps / np.pi) / (eps * eps + x * x)
    return float(out) if out.ndim == 0 else out
