"""Growth-model fitting and doubling-time computation.

Two cumulative-case growth models: exponential y = a*exp(b*t) fitted by
log-linear OLS, and power-law y = t^b + k fitted by bracketed 1-D
minimization over b with the optimal offset k closed-form for each b.
Doubling times come three ways: from the exponential rate (ln 2 / b), from
the power-law fit's instantaneous relative growth rate, and empirically
from day-over-day case ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .stats import median_iqr
from .timeseries import CaseSeries, MobilitySeries

LN2 = math.log(2.0)

POWER_LAW_B_BRACKET = (0.01, 10.0)  # covers every growth coefficient of interest
POWER_LAW_B_TOL = 1e-6


@dataclass(frozen=True)
class GrowthFit:
    model: str  # "exponential" | "power_law"
    a: float
    b: float
    k: float
    window: tuple[int, int]
    r_squared: float
    rmse: float
    boundary_warning: bool = False


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    window: tuple[int, int]
    r_squared: float


@dataclass(frozen=True)
class DoublingTimeSummary:
    """Per-day doubling times over a window; days with no growth are excluded."""

    days: tuple[int, ...]
    values: tuple[float, ...]
    median: float
    q1: float
    q3: float
    iqr: float
    min: float
    max: float
    undefined_count: int = 0

    @classmethod
    def from_per_day(cls, days: Sequence[int], values: Sequence[float], undefined_count: int = 0):
        if not values:
            raise ValueError("no growth observed")
        s = median_iqr(values)
        return cls(
            days=tuple(days),
            values=tuple(values),
            median=s.median,
            q1=s.q1,
            q3=s.q3,
            iqr=s.iqr,
            min=s.minimum,
            max=s.maximum,
            undefined_count=undefined_count,
        )


def _window_points(days, counts, window):
    if window is None:
        return np.asarray(days), np.asarray(counts, dtype=float)
    lo, hi = window
    keep = [(d, c) for d, c in zip(days, counts) if lo <= d <= hi]
    t = np.asarray([d for d, _ in keep])
    y = np.asarray([c for _, c in keep], dtype=float)
    return t, y


def _r_squared(y: np.ndarray, yhat: np.ndarray) -> float:
    sse = float(np.sum((y - yhat) ** 2))
    sst = float(np.sum((y - y.mean()) ** 2))
    if sst == 0.0:
        return 1.0 if sse == 0.0 else 0.0
    return min(1.0, max(0.0, 1.0 - sse / sst))


def fit_exponential(series: CaseSeries, window: Optional[tuple[int, int]] = None) -> GrowthFit:
    """Fit y = a*exp(b*t) by OLS on ln(y); goodness of fit is on the log scale."""
    t, y = _window_points(series.days, series.counts, window)
    return fit_exponential_values(t, y)


def fit_exponential_values(t, y) -> GrowthFit:
    """Exponential fit core on real-valued observations."""
    t = np.asarray(t)
    y = np.asarray(y, dtype=float)
    if len(t) < 4:
        raise ValueError("need at least 4 points to fit")
    if np.any(y <= 0):
        raise ValueError("log of zero")
    ly = np.log(y)
    b, lna = np.polyfit(t, ly, 1)
    lyhat = lna + b * t
    rmse = float(np.sqrt(np.mean((ly - lyhat) ** 2)))
    return GrowthFit(
        model="exponential",
        a=float(math.exp(lna)),
        b=float(b),
        k=0.0,
        window=(int(t[0]), int(t[-1])),
        r_squared=_r_squared(ly, lyhat),
        rmse=rmse,
    )


def _power_law_sse(b: float, t: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """(SSE, optimal k) for y = t^b + k at fixed b; k* = mean(y - t^b)."""
    p = t ** b
    k = float(np.mean(y - p))
    resid = y - p - k
    return float(resid @ resid), k


def fit_power_law(series: CaseSeries, window: Optional[tuple[int, int]] = None) -> GrowthFit:
    """Fit y = t^b + k on the linear scale, b in [0.01, 10]."""
    t, y = _window_points(series.days, series.counts, window)
    return fit_power_law_values(t, y)


def fit_power_law_values(t, y) -> GrowthFit:
    """Power-law fit core on real-valued observations."""
    t = np.asarray(t)
    y = np.asarray(y, dtype=float)
    if len(t) < 4:
        raise ValueError("need at least 4 points to fit")
    if np.any(t < 1):
        raise ValueError("power-law fit requires t >= 1")
    tf = t.astype(float)

    lo, hi = POWER_LAW_B_BRACKET
    # coarse scan guards against local minima before the bracketed refinement
    grid = np.linspace(lo, hi, 256)
    sses = np.array([_power_law_sse(b, tf, y)[0] for b in grid])
    i = int(np.argmin(sses))
    blo = grid[max(0, i - 1)]
    bhi = grid[min(len(grid) - 1, i + 1)]
    res = minimize_scalar(
        lambda b: _power_law_sse(b, tf, y)[0],
        bounds=(blo, bhi),
        method="bounded",
        options={"xatol": POWER_LAW_B_TOL},
    )
    b = float(res.x)
    sse, k = _power_law_sse(b, tf, y)
    yhat = tf ** b + k
    boundary = (b - lo) < 1e-4 or (hi - b) < 1e-4
    return GrowthFit(
        model="power_law",
        a=0.0,
        b=b,
        k=k,
        window=(int(t[0]), int(t[-1])),
        r_squared=_r_squared(y, yhat),
        rmse=float(np.sqrt(sse / len(y))),
        boundary_warning=boundary,
    )


def fit_linear(series: MobilitySeries, window: Optional[tuple[int, int]] = None) -> LinearFit:
    """OLS line through (t, value); gaps in the series are simply absent points."""
    t, y = _window_points(series.days, series.values, window)
    if len(t) < 3:
        raise ValueError("need at least 3 points to fit")
    slope, intercept = np.polyfit(t.astype(float), y, 1)
    yhat = intercept + slope * t
    return LinearFit(
        slope=float(slope),
        intercept=float(intercept),
        window=(int(t[0]), int(t[-1])),
        r_squared=_r_squared(y, yhat),
    )


def doubling_time_exponential(b: float) -> Optional[float]:
    """ln 2 / b; None ("no growth") when b <= 0."""
    if b <= 0:
        return None
    return LN2 / b


def doubling_time_power_law(fit: GrowthFit, window: tuple[int, int]) -> DoublingTimeSummary:
    """Per-day doubling time ln 2 * y / y' for y = t^b + k, summarized over the window."""
    if fit.model != "power_law":
        raise ValueError("fit must be a power-law fit")
    if fit.b <= 0:
        raise ValueError("no growth")
    days, values = [], []
    undefined = 0
    for t in range(window[0], window[1] + 1):
        y = t ** fit.b + fit.k
        dy = fit.b * t ** (fit.b - 1.0)
        if y <= 0 or dy <= 0:
            undefined += 1
            continue
        days.append(t)
        values.append(LN2 * y / dy)
    return DoublingTimeSummary.from_per_day(days, values, undefined)


def empirical_doubling_time(
    series: CaseSeries, window: Optional[tuple[int, int]] = None
) -> DoublingTimeSummary:
    """Doubling time from one-day case ratios: ln 2 / ln(y_t / y_{t-1}).

    Days with no increase carry no growth signal and are excluded from the
    summary (their count is reported), keeping the median finite.
    """
    t, y = _window_points(series.days, series.counts, window)
    if len(t) < 2:
        raise ValueError("need at least 2 points")
    days, values = [], []
    undefined = 0
    for i in range(1, len(t)):
        if y[i - 1] > 0 and y[i] > y[i - 1]:
            days.append(int(t[i]))
            values.append(LN2 / math.log(y[i] / y[i - 1]))
        else:
            undefined += 1
    if not values:
        raise ValueError("no growth observed")
    return DoublingTimeSummary.from_per_day(days, values, undefined)
