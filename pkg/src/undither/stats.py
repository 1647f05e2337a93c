"""First-order histogram statistics, GLCM texture statistics, MSE and PSNR."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import LEVELS, Histogram, as_gray

# (row, col) unit step for each supported direction; 90 degrees points up
DIRECTIONS = {
    0: (0, 1),
    45: (-1, 1),
    90: (-1, 0),
    135: (-1, -1),
}

_LEVEL_VALUES = np.arange(LEVELS, dtype=np.float64)


class UndefinedCorrelationError(ArithmeticError):
    """GLCM correlation needs non-zero spread in both marginals."""


def _entropy_bits(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


@dataclass(frozen=True)
class FirstOrderStats:
    mean: float
    variance: float
    mu3: float
    """Third central moment taken as sum of (mean - r)**3 p(r); note the sign."""
    mu4: float
    energy: float
    entropy: float


def first_order(hist: Histogram) -> FirstOrderStats:
    if hist.total <= 0:
        raise ValueError("histogram is empty")
    p = hist.probabilities
    r = _LEVEL_VALUES
    mean = float((r * p).sum())
    dev = mean - r
    return FirstOrderStats(
        mean=mean,
        variance=float((dev**2 * p).sum()),
        mu3=float((dev**3 * p).sum()),
        mu4=float((dev**4 * p).sum()),
        energy=float((p**2).sum()),
        entropy=_entropy_bits(p),
    )


@dataclass(frozen=True)
class Glcm:
    probabilities: np.ndarray
    theta: int
    d: int
    pairs: int

    @property
    def levels(self) -> int:
        return self.probabilities.shape[0]


def glcm(img, theta: int = 0, d: int = 1) -> Glcm:
    """Ordered (non-symmetric) co-occurrence probabilities over 256 levels.

    Entry ``(a, b)`` is the fraction of pixel pairs where ``a`` sits at
    ``(i, j)`` and ``b`` at ``(i, j) + d * direction(theta)``.
    """
    if theta not in DIRECTIONS:
        raise ValueError(f"theta must be one of {sorted(DIRECTIONS)}, got {theta}")
    if d < 1:
        raise ValueError(f"displacement must be >= 1, got {d}")
    gray = as_gray(img)
    height, width = gray.shape
    di, dj = DIRECTIONS[theta]
    di, dj = di * d, dj * d
    if abs(di) >= height or abs(dj) >= width:
        raise ValueError(f"a {width}x{height} image has no pixel pairs at theta={theta}, d={d}")

    rows = slice(max(0, -di), height - max(0, di))
    cols = slice(max(0, -dj), width - max(0, dj))
    first = gray[rows, cols]
    second = gray[rows.start + di:rows.stop + di, cols.start + dj:cols.stop + dj]
    codes = first.astype(np.int64) * LEVELS + second
    counts = np.bincount(codes.ravel(), minlength=LEVELS * LEVELS)
    pairs = int(first.size)
    return Glcm(
        probabilities=(counts / pairs).reshape(LEVELS, LEVELS),
        theta=theta, d=d, pairs=pairs,
    )


@dataclass(frozen=True)
class SecondOrderStats:
    energy: float
    entropy: float
    contrast: float
    homogeneity: float
    correlation: float
    """NaN when either marginal has zero spread."""


def second_order(m: Glcm, strict: bool = False) -> SecondOrderStats:
    """Energy, entropy, contrast, homogeneity and correlation of a GLCM.

    Correlation uses the marginal means and standard deviations of ``m``.
    It is undefined for a degenerate marginal: NaN is stored, or
    ``UndefinedCorrelationError`` raised when ``strict``.
    """
    p = m.probabilities
    n = p.shape[0]
    a = np.arange(n, dtype=np.float64)[:, None]
    b = np.arange(n, dtype=np.float64)[None, :]
    diff = a - b

    px = p.sum(axis=1)
    py = p.sum(axis=0)
    levels = np.arange(n, dtype=np.float64)
    mu_x = float((levels * px).sum())
    mu_y = float((levels * py).sum())
    sigma_x = math.sqrt(float(((levels - mu_x) ** 2 * px).sum()))
    sigma_y = math.sqrt(float(((levels - mu_y) ** 2 * py).sum()))
    if sigma_x * sigma_y > 0:
        cov = float(((a - mu_x) * (b - mu_y) * p).sum())
        correlation = cov / (sigma_x * sigma_y)
    elif strict:
        raise UndefinedCorrelationError("GLCM marginal has zero standard deviation")
    else:
        correlation = math.nan

    return SecondOrderStats(
        energy=float((p**2).sum()),
        entropy=_entropy_bits(p),
        contrast=float((diff**2 * p).sum()),
        homogeneity=float((p / (1.0 + np.abs(diff))).sum()),
        correlation=correlation,
    )


@dataclass(frozen=True)
class FidelityMetrics:
    mse: float
    psnr: float


def psnr_from_mse(mse: float) -> float:
    if mse == 0:
        return math.inf
    return 20.0 * math.log10(255.0 / math.sqrt(mse))


def fidelity(original, reconstructed) -> FidelityMetrics:
    a = as_gray(original)
    b = as_gray(reconstructed)
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    diff = a.astype(np.int64) - b.astype(np.int64)
    mse = float((diff * diff).sum()) / diff.size
    return FidelityMetrics(mse=mse, psnr=psnr_from_mse(mse))
