"""Shared helpers for the test suite: masks, metrics, reference fields."""

import numpy as np

from cvseg.grid import LevelSetField, ScalarField


def dice(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    denom = a.sum() + b.sum()
    if denom == 0:
        return 1.0
    return 2.0 * np.logical_and(a, b).sum() / denom


def count_components(mask: np.ndarray) -> int:
    """4-connected foreground components via iterative flood fill."""
    mask = np.asarray(mask, dtype=bool)
    seen = np.zeros_like(mask)
    h, w = mask.shape
    n = 0
    for si in range(h):
        for sj in range(w):
            if not mask[si, sj] or seen[si, sj]:
                continue
            n += 1
            stack = [(si, sj)]
            seen[si, sj] = True
            while stack:
                i, j = stack.pop()
                for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                    if 0 <= ni < h and 0 <= nj < w and mask[ni, nj] and not seen[ni, nj]:
                        seen[ni, nj] = True
                        stack.append((ni, nj))
    return n


def circle_sdf(width: int, height: int, cx: float, cy: float, radius: float,
               positive_inside: bool = True, h: float = 1.0) -> LevelSetField:
    jj, ii = np.meshgrid(np.arange(width, dtype=np.float64),
                         np.arange(height, dtype=np.float64))
    d = np.hypot(jj - cx, ii - cy)
    values = (radius - d) if positive_inside else (d - radius)
    return LevelSetField(ScalarField(h * values, h))


def zero_crossings(values: np.ndarray) -> np.ndarray:
    """Pixels participating in a 4-neighbor pair of opposite strict signs."""
    pos = values > 0
    neg = values < 0
    edge = np.zeros(values.shape, dtype=bool)
    edge[:, :-1] |= (pos[:, :-1] & neg[:, 1:]) | (neg[:, :-1] & pos[:, 1:])
    edge[:, 1:] |= (pos[:, 1:] & neg[:, :-1]) | (neg[:, 1:] & pos[:, :-1])
    edge[:-1, :] |= (pos[:-1, :] & neg[1:, :]) | (neg[:-1, :] & pos[1:, :])
    edge[1:, :] |= (pos[1:, :] & neg[:-1, :]) | (neg[1:, :] & pos[:-1, :])
    return edge


def dilate(mask: np.ndarray) -> np.ndarray:
    """One step of 4-neighbor binary dilation."""
    out = mask.copy()
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    out[:, 1:] |= mask[:, :-1]
    out[:, :-1] |= mask[:, 1:]
    return out
