"""Bilevel dithering: Floyd-Steinberg error diffusion and Bayer ordered dither.

Output images stay 8-bit with pixels in {0, 255}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import as_gray

THRESHOLD = 128

# (row offset, col offset, weight); every target is still unvisited in raster order
FLOYD_STEINBERG = (
    (0, 1, 7 / 16),
    (1, -1, 3 / 16),
    (1, 0, 5 / 16),
    (1, 1, 1 / 16),
)

ORDERS = (2, 4, 8)


@dataclass(frozen=True)
class DitherMethod:
    """``kind`` is ``"fs"`` or ``"ordered"``; ``order`` only matters for the latter."""

    kind: str = "fs"
    order: int = 4

    def __post_init__(self):
        if self.kind not in ("fs", "ordered"):
            raise ValueError(f"unknown dither method {self.kind!r}")
        if self.kind == "ordered" and self.order not in ORDERS:
            raise ValueError(f"Bayer order must be one of {ORDERS}, got {self.order}")

    def apply(self, img) -> np.ndarray:
        if self.kind == "fs":
            return dither_floyd_steinberg(img)
        return dither_ordered(img, self.order)


def dither_floyd_steinberg(img) -> np.ndarray:
    """Floyd-Steinberg error diffusion in plain raster order.

    A pixel becomes white when its working value is >= 128. Error shares
    aimed outside the image are dropped.
    """
    gray = as_gray(img)
    height, width = gray.shape
    work = gray.astype(np.float64).tolist()
    out = np.zeros((height, width), dtype=np.uint8)
    w_right, w_below_left, w_below, w_below_right = (w for _, _, w in FLOYD_STEINBERG)

    for i in range(height):
        row = work[i]
        below = work[i + 1] if i + 1 < height else None
        out_row = out[i]
        bits = [0] * width
        for j in range(width):
            old = row[j]
            if old >= THRESHOLD:
                bits[j] = 255
                err = old - 255.0
            else:
                err = old
            if err == 0.0:
                continue
            if j + 1 < width:
                row[j + 1] += err * w_right
            if below is not None:
                if j > 0:
                    below[j - 1] += err * w_below_left
                below[j] += err * w_below
                if j + 1 < width:
                    below[j + 1] += err * w_below_right
        out_row[:] = bits
    return out


def bayer_matrix(order: int) -> np.ndarray:
    """Recursive Bayer index matrix with entries 0..order**2 - 1."""
    if order not in ORDERS:
        raise ValueError(f"Bayer order must be one of {ORDERS}, got {order}")
    m = np.array([[0, 2], [3, 1]], dtype=np.int64)
    while m.shape[0] < order:
        m = np.block([[4 * m, 4 * m + 2], [4 * m + 3, 4 * m + 1]])
    return m


def bayer_thresholds(order: int) -> np.ndarray:
    return 255.0 * (bayer_matrix(order) + 0.5) / order**2


def dither_ordered(img, order: int = 4) -> np.ndarray:
    gray = as_gray(img)
    thresholds = bayer_thresholds(order)
    height, width = gray.shape
    reps = (-(-height // order), -(-width // order))
    tiled = np.tile(thresholds, reps)[:height, :width]
    return np.where(gray > tiled, 255, 0).astype(np.uint8)


def is_bilevel(img) -> bool:
    gray = as_gray(img)
    return bool(np.all((gray == 0) | (gray == 255)))
