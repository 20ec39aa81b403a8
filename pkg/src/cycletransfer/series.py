"""Single-channel series utilities: validation, scaling and smoothing.

A series is held as a plain 1-D float64 numpy array. Every public function
validates its input through :func:`as_series`, which enforces the basic
contract (one dimension, at least one sample, all values finite).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstantSeriesError,
    InvalidAlphaError,
    RadiusTooLargeError,
)

# Ranges below this are treated as constant (zero variance).
MIN_RANGE = 1e-12


def as_series(values, min_len: int = 1) -> np.ndarray:
    """Coerce ``values`` to a 1-D float64 array and check basic sanity."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D series, got shape {arr.shape}")
    if arr.size < min_len:
        raise ValueError(f"series has {arr.size} samples, need at least {min_len}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series contains NaN or infinite samples")
    return arr


def require_nonconstant(series: np.ndarray) -> None:
    """Raise ConstantSeriesError when the series range is numerically zero."""
    if float(np.ptp(series)) < MIN_RANGE:
        raise ConstantSeriesError(
            f"series range is below {MIN_RANGE:g}, values are effectively constant"
        )


@dataclass(frozen=True)
class ScaleParams:
    """Original-unit bounds of a channel, kept so scaling can be undone."""

    min: float
    max: float

    def __post_init__(self):
        if not self.max - self.min > 0.0:
            raise ValueError(f"scale bounds must satisfy max > min, got [{self.min}, {self.max}]")


def normalize_minmax(series) -> tuple[np.ndarray, ScaleParams]:
    """Map a series onto [0, 1] and return the bounds used.

    The minimum maps to exactly 0 and the maximum to exactly 1. A series
    whose range falls below ``MIN_RANGE`` raises ConstantSeriesError.
    """
    x = as_series(series, min_len=2)
    lo = float(x.min())
    hi = float(x.max())
    if hi - lo < MIN_RANGE:
        raise ConstantSeriesError(f"series range {hi - lo:g} is below {MIN_RANGE:g}")
    return (x - lo) / (hi - lo), ScaleParams(lo, hi)


def denormalize(series, params: ScaleParams) -> np.ndarray:
    """Undo :func:`normalize_minmax` using the stored bounds."""
    x = as_series(series)
    return x * (params.max - params.min) + params.min


def mean_smoothing(series, radius: int) -> np.ndarray:
    """Centered moving average with window 2*radius + 1.

    Windows are clipped at the series ends, so boundary samples average
    whatever part of the window exists. ``radius`` must be smaller than
    the series length; radius 0 returns a copy.
    """
    x = as_series(series)
    n = x.size
    radius = int(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if radius >= n:
        raise RadiusTooLargeError(f"radius {radius} must be below the series length {n}")
    if radius == 0:
        return x.copy()
    # Center on the first sample so constant series come back bit-exact.
    base = x[0]
    csum = np.concatenate(([0.0], np.cumsum(x - base)))
    idx = np.arange(n)
    lo = np.maximum(idx - radius, 0)
    hi = np.minimum(idx + radius, n - 1)
    return base + (csum[hi + 1] - csum[lo]) / (hi - lo + 1)


def exponential_smoothing(series, alpha: float, radius: int) -> np.ndarray:
    """Weighted window smoother with center weight alpha.

    Interior samples become ``alpha*s[i] + beta*sum(s[i-j] + s[i+j])`` for
    j in 1..radius with ``beta = (1 - alpha)/(2*radius)``, so the weights
    add up to one. The first and last ``radius`` samples are copied
    unchanged.
    """
    x = as_series(series)
    n = x.size
    radius = int(radius)
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlphaError(f"alpha must lie in (0, 1], got {alpha}")
    if radius < 1:
        raise ValueError("radius must be a positive integer")
    if radius >= n:
        raise RadiusTooLargeError(f"radius {radius} must be below the series length {n}")
    if alpha == 1.0 or 2 * radius >= n:
        # No interior sample is further than radius from both ends, so the
        # boundary-copy rule covers the whole series.
        return x.copy()
    base = x[0]
    d = x - base
    beta = (1.0 - alpha) / (2.0 * radius)
    acc = np.zeros(n - 2 * radius)
    for j in range(1, radius + 1):
        acc += d[radius - j : n - radius - j] + d[radius + j : n - radius + j]
    out = x.copy()
    out[radius : n - radius] = base + (alpha * d[radius : n - radius] + beta * acc)
    return out


def default_smooth_radius(reference_period: float) -> int:
    """Default window radius for a detected cycle length: max(1, round(l/8))."""
    return max(1, int(round(reference_period / 8.0)))
