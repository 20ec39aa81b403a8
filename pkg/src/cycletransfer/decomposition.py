"""Trend fitting and period segmentation.

A series is viewed additively: repeating cycle + slow trend + noise. The
trend is a least-squares polynomial in the frame index; period starts are
the rising crossovers between the smoothed series and that trend, pruned
by a neighbor-spacing test around the detected cycle length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    InvalidFrequencyError,
    NoCrossoversError,
    SeasonalityNotFoundError,
    SeriesTooShortError,
)
from .series import as_series

RISING = "rising"
FALLING = "falling"

# Fitted leading coefficients below this are treated as numerically zero.
MIN_LEAD_COEF = 1e-10
# Coefficients this far below the probe fit's largest one are rounding
# noise, no matter how far above the absolute floor they sit. A degree-30
# least-squares fit carries relative coefficient noise up to a few 1e-6
# even on exactly representable data (measured on exact cubics and on a
# pure sinusoid whose symmetry zeroes every even power), so an absolute
# floor alone cannot separate "numerically zero" from "small but real".
# A coefficient five decades below the largest one contributes nothing
# visible to the trend values, so rejecting it is always safe.
REL_COEF_FLOOR = 1e-5


@dataclass(eq=False)
class TrendModel:
    """Polynomial trend in the rescaled frame coordinate.

    ``coefficients`` are ascending powers of x where x maps frames 0..n-1
    linearly onto [-1, 1]. ``values`` is the trend evaluated at every
    frame. ``fallback`` marks the order-1 fit used when no candidate order
    passed the leading-coefficient band.
    """

    coefficients: np.ndarray
    order: int
    values: np.ndarray
    fallback: bool = False


def scaled_abscissa(n: int) -> np.ndarray:
    """Frame indices 0..n-1 mapped linearly onto [-1, 1]."""
    if n < 2:
        raise SeriesTooShortError("need at least 2 frames for a trend abscissa")
    return np.linspace(-1.0, 1.0, n)


def fit_trend(series, max_order: int = 30, f: int = 1) -> TrendModel:
    """Fit the slow trend of a series by polynomial least squares.

    One probe fit at max_order supplies the coefficient sequence; the
    trend order is the highest power whose probe coefficient c_k clears
    the noise floor while staying under f, and the returned model is a
    fresh fit at that order. The floor, max(MIN_LEAD_COEF,
    REL_COEF_FLOOR * max|c|), skips powers that only hold rounding noise;
    the upper bound, with f the number of cycles in the series, rejects
    powers steep enough to belong to the cyclic component rather than the
    trend. When every power fails the test the order-1 fit is returned
    with ``fallback`` set, which is the common outcome on strongly cyclic
    data: every power is busy tracking the cycle, so the trend reduces to
    a plain line.

    Coefficients live on the rescaled abscissa (frames mapped onto
    [-1, 1]). Raises SeriesTooShortError unless n >= max_order + 1.
    """
    x = as_series(series, min_len=2)
    n = x.size
    max_order = int(max_order)
    if max_order < 1:
        raise ValueError("max_order must be a positive integer")
    if n <= max_order:
        raise SeriesTooShortError(f"need more than max_order={max_order} samples, got {n}")
    if f < 1:
        raise InvalidFrequencyError(f"cycle count bound f must be >= 1, got {f}")
    t = scaled_abscissa(n)
    probe, _ = npoly.polyfit(t, x, max_order, full=True)
    floor = max(MIN_LEAD_COEF, REL_COEF_FLOOR * float(np.max(np.abs(probe))))
    for order in range(max_order, 0, -1):
        if floor < abs(probe[order]) < f:
            coef, _ = npoly.polyfit(t, x, order, full=True)
            return TrendModel(coef, order, npoly.polyval(t, coef))
    coef, _ = npoly.polyfit(t, x, 1, full=True)
    return TrendModel(coef, 1, npoly.polyval(t, coef), fallback=True)


class Crossover(NamedTuple):
    index: int
    direction: str


def _trend_values(trend) -> np.ndarray:
    if isinstance(trend, TrendModel):
        return trend.values
    return as_series(trend)


def find_crossovers(smoothed, trend) -> list[Crossover]:
    """Indices where the smoothed series crosses its trend.

    The scan looks at the sign of d = smoothed - trend. A crossover sits at
    the smallest index i >= 1 where the sign changes; a zero sample takes
    the side of its successor, so a run of exact zeros yields one
    crossover at the first zero. Direction is RISING when d moves from the
    negative to the positive side.

    Raises NoCrossoversError when d never changes sign.
    """
    s = as_series(smoothed)
    t = _trend_values(trend)
    if s.size != t.size:
        raise ValueError(f"smoothed and trend lengths differ: {s.size} != {t.size}")
    sign = np.sign(s - t)
    # Zeros inherit the sign of the next signed sample to their right;
    # trailing zeros keep sign 0 and can never register a change.
    for i in range(sign.size - 2, -1, -1):
        if sign[i] == 0.0:
            sign[i] = sign[i + 1]
    out = []
    for i in range(1, sign.size):
        a, b = sign[i - 1], sign[i]
        if a != 0.0 and b != 0.0 and a != b:
            out.append(Crossover(i, RISING if b > 0.0 else FALLING))
    if not out:
        raise NoCrossoversError("series never crosses its trend")
    return out


@dataclass(eq=False)
class PeriodSegmentation:
    """Validated period starts and the periods they delimit.

    ``periods`` holds half-open frame ranges [start, end) built from
    consecutive retained starts whose gap sits inside the validation
    window around ``reference_period``.
    """

    period_starts: np.ndarray
    periods: list[tuple[int, int]]
    reference_period: float
    alpha: float

    @property
    def period_lengths(self) -> np.ndarray:
        return np.array([end - start for start, end in self.periods], dtype=int)

    def covered_frames(self) -> np.ndarray:
        """All frame indices inside any period, in increasing order."""
        if not self.periods:
            return np.empty(0, dtype=int)
        return np.concatenate([np.arange(start, end) for start, end in self.periods])


def validate_periods(candidates, reference_period: float, alpha: float = 0.8) -> PeriodSegmentation:
    """Prune candidate period starts by neighbor spacing.

    A candidate start p is retained when some other candidate p' sits at a
    distance within (1 - alpha) * reference_period of the reference
    period itself, i.e. abs(abs(p' - p) - l) < (1 - alpha) * l. Retained
    consecutive pairs whose own gap passes the same test become periods.

    Raises SeasonalityNotFoundError when fewer than two starts survive or
    no consecutive pair forms a period.
    """
    cand = np.asarray(candidates, dtype=int)
    if cand.ndim != 1:
        raise ValueError("candidates must be a 1-D sequence of frame indices")
    if cand.size > 1 and not np.all(np.diff(cand) > 0):
        raise ValueError("candidate starts must be strictly increasing")
    l = float(reference_period)
    if not l > 0:
        raise ValueError(f"reference period must be positive, got {l}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    window = (1.0 - alpha) * l

    retained = []
    for p in cand:
        gaps = np.abs(cand - p)
        ok = np.abs(gaps - l) < window
        ok &= cand != p
        if np.any(ok):
            retained.append(int(p))
    periods = [
        (a, b)
        for a, b in zip(retained, retained[1:])
        if abs((b - a) - l) < window
    ]
    if len(retained) < 2 or not periods:
        raise SeasonalityNotFoundError(
            f"{len(retained)} retained starts and {len(periods)} periods; "
            "need at least 2 starts forming 1 period"
        )
    return PeriodSegmentation(
        period_starts=np.asarray(retained, dtype=int),
        periods=periods,
        reference_period=l,
        alpha=alpha,
    )
