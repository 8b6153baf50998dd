"""Ten-Hundred plot coordinates: durations of successive tenfold-growth
intervals, classifying each step as sub-exponential, exponential, or
super-exponential.

Axis convention: x is the later (higher-decade) interval and y the earlier
one, so slowing growth lands lower-right and the diagonal marks constant-rate
exponential growth.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .timeseries import CaseSeries

DIAGONAL_TOLERANCE = 0.10


@dataclass(frozen=True)
class DecadeCrossings:
    region: str
    thresholds: tuple[int, ...]  # 10, 100, 1000, ...
    times: tuple[float, ...]  # fractional epoch days, strictly increasing


@dataclass(frozen=True)
class TenHundredPoint:
    region: str
    index: int
    x: float  # later tenfold interval, days
    y: float  # earlier tenfold interval, days
    classification: str  # "sub_exponential" | "exponential" | "super_exponential"


def decade_crossings(series: CaseSeries, base_threshold: int = 10) -> DecadeCrossings:
    """Crossing time of each power-of-ten threshold, interpolated in log space.

    Log-linear interpolation between the bracketing days is exact for
    exponential segments, which keeps the diagonal test sharp.
    """
    thresholds: list[int] = []
    times: list[float] = []
    peak = max(series.counts)
    threshold = base_threshold
    # thresholds the series already exceeds on its first day were crossed
    # before the observation window and carry no usable crossing time
    while threshold <= series.counts[0]:
        threshold *= 10
    while threshold <= peak:
        i = next(i for i, c in enumerate(series.counts) if c >= threshold)
        if series.counts[i - 1] <= 0:
            t = float(series.days[i])
        else:
            y0, y1 = series.counts[i - 1], series.counts[i]
            frac = (math.log(threshold) - math.log(y0)) / (math.log(y1) - math.log(y0))
            t = series.days[i - 1] + frac * (series.days[i] - series.days[i - 1])
        thresholds.append(threshold)
        times.append(t)
        threshold *= 10
    if not thresholds:
        warnings.warn(f"region {series.region}: never reaches {base_threshold} cases")
    return DecadeCrossings(region=series.region, thresholds=tuple(thresholds), times=tuple(times))


def tenhundred_points(
    crossings: DecadeCrossings, tolerance: float = DIAGONAL_TOLERANCE
) -> list[TenHundredPoint]:
    """One point per pair of consecutive tenfold intervals; the sequence of
    points is the region's growth trajectory."""
    times = crossings.times
    if len(times) < 3:
        return []
    intervals = [b - a for a, b in zip(times, times[1:])]
    points = []
    for i in range(1, len(intervals)):
        x = intervals[i]
        y = intervals[i - 1]
        if abs(x - y) / max(x, y) <= tolerance:
            label = "exponential"
        elif x > y:
            label = "sub_exponential"
        else:
            label = "super_exponential"
        points.append(
            TenHundredPoint(region=crossings.region, index=i - 1, x=x, y=y, classification=label)
        )
    return points
