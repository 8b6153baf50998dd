"""Correlation, Fisher-z intervals, significance, and quantile summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats as sps


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    n: int
    ci95: tuple[float, float]
    p_value: float


class QuantileSummary(NamedTuple):
    median: float
    q1: float
    q3: float
    iqr: float
    minimum: float
    maximum: float


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation coefficient."""
    if len(x) != len(y):
        raise ValueError("length mismatch")
    if len(x) < 3:
        raise ValueError("need at least 3 observations")
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sx = math.sqrt(float(dx @ dx))
    sy = math.sqrt(float(dy @ dy))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("degenerate input")
    return float(dx @ dy) / (sx * sy)


def fisher_ci(r: float, n: int, level: float = 0.95) -> tuple[float, float]:
    """Fisher z confidence interval for a correlation coefficient."""
    if abs(r) > 1:
        raise ValueError("correlation outside [-1, 1]")
    if abs(r) == 1.0:
        return (r, r)
    if n < 4:
        raise ValueError("need n >= 4")
    z = math.atanh(r)
    half = sps.norm.ppf(0.5 + level / 2) / math.sqrt(n - 3)
    return (math.tanh(z - half), math.tanh(z + half))


def p_value_pearson(r: float, n: int) -> float:
    """Two-sided p-value from the t statistic r*sqrt((n-2)/(1-r^2)), df = n-2."""
    if abs(r) > 1:
        raise ValueError("correlation outside [-1, 1]")
    if n < 4:
        raise ValueError("need n >= 4")
    if abs(r) == 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return float(2.0 * sps.t.sf(abs(t), n - 2))


def median_iqr(values: Sequence[float]) -> QuantileSummary:
    """Median, quartiles (linear interpolation between order stats), IQR, range."""
    if len(values) == 0:
        raise ValueError("empty input")
    arr = np.asarray(values, dtype=float)
    q1, med, q3 = (float(q) for q in np.quantile(arr, [0.25, 0.5, 0.75], method="linear"))
    return QuantileSummary(med, q1, q3, q3 - q1, float(arr.min()), float(arr.max()))


def correlation_with_ci(x: Sequence[float], y: Sequence[float], level: float = 0.95) -> CorrelationResult:
    """Pearson r plus Fisher-z CI and t-test p-value in one result."""
    r = pearson(x, y)
    n = len(x)
    return CorrelationResult(r=r, n=n, ci95=fisher_ci(r, n, level), p_value=p_value_pearson(r, n))
