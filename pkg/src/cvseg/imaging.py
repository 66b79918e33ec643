"""Image I/O, ROI cropping, and synthetic test-image generation.

Loaded intensities always live in [0, 1]: 8-bit samples are divided by 255,
16-bit by 65535, and color inputs are first reduced with the BT.601 luma
weights 0.299/0.587/0.114.  Supported formats are PNG (8/16-bit gray,
8-bit RGB) and binary PGM (P5).

The synthetic generators reproduce the test scenarios used by the
acceptance suite: a two-level disk, an optional blur, seeded Gaussian
noise, and a thin cross of bars.  All are deterministic given their
arguments.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import InputError, OutputError, ParameterError
from .grid import MIN_SIZE, ScalarField

LUMA_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass(frozen=True)
class RoiRect:
    x0: int
    y0: int
    width: int
    height: int

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0:
            raise ParameterError(f"roi origin must be non-negative, got ({self.x0}, {self.y0})")
        if self.width < MIN_SIZE or self.height < MIN_SIZE:
            raise ParameterError(f"roi must be at least {MIN_SIZE}x{MIN_SIZE}")


def load_grayscale(path, spacing_h: float = 1.0) -> ScalarField:
    """Load an image as a [0, 1] intensity field."""
    try:
        img = Image.open(path)
        img.load()
    except (OSError, UnidentifiedImageError, ValueError) as err:
        raise InputError(f"cannot read image {path!r}: {err}") from err

    if img.mode in ("L", "P"):
        arr = np.asarray(img.convert("L"), dtype=np.float64) / 255.0
    elif img.mode in ("I", "I;16", "I;16B", "I;16L"):
        arr = np.asarray(img.convert("I"), dtype=np.float64) / 65535.0
    elif img.mode in ("RGB", "RGBA"):
        rgb = np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
        wr, wg, wb = LUMA_WEIGHTS
        arr = wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2]
    else:
        raise InputError(f"unsupported image mode {img.mode!r} in {path!r}")

    if arr.ndim != 2 or arr.shape[0] < MIN_SIZE or arr.shape[1] < MIN_SIZE:
        raise InputError(
            f"image {path!r} is {arr.shape[1]}x{arr.shape[0]}, "
            f"need at least {MIN_SIZE}x{MIN_SIZE}"
        )
    return ScalarField(np.clip(arr, 0.0, 1.0), spacing_h)


def crop_roi(img: ScalarField, roi: RoiRect) -> ScalarField:
    """Exact sub-grid copy; spacing preserved."""
    if roi.x0 + roi.width > img.width or roi.y0 + roi.height > img.height:
        raise ParameterError(
            f"roi {roi} does not fit inside a {img.width}x{img.height} image"
        )
    sub = img.values[roi.y0:roi.y0 + roi.height, roi.x0:roi.x0 + roi.width].copy()
    return ScalarField(sub, img.spacing_h)


def synth_disk(width, height, center, radius, fg=1.0, bg=0.0,
               spacing_h: float = 1.0) -> tuple[ScalarField, np.ndarray]:
    """Two-level disk image plus its exact ground-truth mask."""
    if not radius > 0:
        raise ParameterError(f"radius must be > 0, got {radius}")
    cx, cy = center
    jj, ii = np.meshgrid(np.arange(width, dtype=np.float64),
                         np.arange(height, dtype=np.float64))
    mask = (jj - cx) ** 2 + (ii - cy) ** 2 <= radius * radius
    values = np.where(mask, float(fg), float(bg))
    return ScalarField(values, spacing_h), mask


def _gaussian_kernel(sigma: float) -> np.ndarray:
    radius = math.ceil(3.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def _convolve_axis(arr: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    radius = (len(kernel) - 1) // 2
    pad = [(0, 0), (0, 0)]
    pad[axis] = (radius, radius)
    padded = np.pad(arr, pad, mode="edge")
    out = np.zeros_like(arr)
    for t, w in enumerate(kernel):
        sl = [slice(None), slice(None)]
        sl[axis] = slice(t, t + arr.shape[axis])
        out += w * padded[tuple(sl)]
    return out


def gaussian_blur(img: ScalarField, sigma: float) -> ScalarField:
    """Separable Gaussian blur, kernel truncated at radius ceil(3*sigma),
    replicate-clamped borders."""
    if not sigma > 0:
        raise ParameterError(f"sigma must be > 0, got {sigma}")
    kernel = _gaussian_kernel(sigma)
    out = _convolve_axis(_convolve_axis(img.values, kernel, 0), kernel, 1)
    return ScalarField(out, img.spacing_h)


def add_noise(img: ScalarField, stddev: float, seed: int) -> ScalarField:
    """Seeded additive Gaussian noise, clamped back into [0, 1]."""
    if stddev < 0:
        raise ParameterError(f"stddev must be >= 0, got {stddev}")
    if stddev == 0:
        return img.copy()
    rng = np.random.default_rng(seed)
    noisy = img.values + rng.normal(0.0, stddev, size=img.shape)
    return ScalarField(np.clip(noisy, 0.0, 1.0), img.spacing_h)


def synth_thin_edges(width, height, line_thickness=1, fg=1.0, bg=0.0,
                     spacing_h: float = 1.0) -> tuple[ScalarField, np.ndarray]:
    """Centered cross of a horizontal and a vertical bar, plus exact mask."""
    t = int(line_thickness)
    if t < 1:
        raise ParameterError(f"line thickness must be >= 1, got {line_thickness}")
    if t > min(width, height):
        raise ParameterError("line thickness exceeds the grid")
    mask = np.zeros((height, width), dtype=bool)
    r0 = (height - t) // 2
    c0 = (width - t) // 2
    mask[r0:r0 + t, :] = True
    mask[:, c0:c0 + t] = True
    values = np.where(mask, float(fg), float(bg))
    return ScalarField(values, spacing_h), mask


def _atomic_write(path, write_fn):
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-cvseg-")
        os.close(fd)
        write_fn(tmp)
        os.replace(tmp, path)
    except OSError as err:
        try:
            os.unlink(tmp)
        except (OSError, UnboundLocalError):
            pass
        raise OutputError(f"cannot write {path!r}: {err}") from err


def save_mask(mask: np.ndarray, path) -> None:
    """Save a binary mask as an 8-bit {0, 255} image (PNG or P5 by suffix)."""
    data = np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8)
    if str(path).lower().endswith(".pgm"):
        _atomic_write(path, lambda tmp: _write_pgm8(data, tmp))
    else:
        _atomic_write(path, lambda tmp: Image.fromarray(data, mode="L").save(tmp, format="PNG"))


def save_overlay(img: ScalarField, contour, path) -> None:
    """Save the image as RGB with contour pixels painted pure red."""
    gray = np.clip(np.round(img.values * 255.0), 0, 255).astype(np.uint8)
    rgb = np.stack([gray, gray, gray], axis=-1)
    for i, j in contour:
        rgb[i, j] = (255, 0, 0)
    _atomic_write(path, lambda tmp: Image.fromarray(rgb, mode="RGB").save(tmp, format="PNG"))


def _write_pgm8(data: np.ndarray, path) -> None:
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (data.shape[1], data.shape[0]))
        fh.write(data.tobytes())


def save_pgm16(values: np.ndarray, path) -> None:
    """Save a real field linearly rescaled to the full 16-bit P5 range."""
    v = np.asarray(values, dtype=np.float64)
    lo, hi = float(v.min()), float(v.max())
    scale = 65535.0 / (hi - lo) if hi > lo else 0.0
    data = np.round((v - lo) * scale).astype(">u2")

    def write(tmp):
        with open(tmp, "wb") as fh:
            fh.write(b"P5\n%d %d\n65535\n" % (v.shape[1], v.shape[0]))
            fh.write(data.tobytes())

    _atomic_write(path, write)
