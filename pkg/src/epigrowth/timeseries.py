"""Core time-series types: epoch-day alignment, cleaning, incidence, phase splits.

Epoch day 1 corresponds to 2020-03-11; all analysis windows use this origin
so that power-law fits in t are defined everywhere (t >= 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from enum import Enum

T_ORIGIN = date(2020, 3, 11)  # epoch day 1

MIN_PHASE_DAYS = 4  # two-parameter fits need >= 3 points; 4 leaves a residual dof


def day_from_date(d: date) -> int:
    """Calendar date -> epoch day index (2020-03-11 -> 1)."""
    return (d - T_ORIGIN).days + 1


def date_from_day(index: int) -> date:
    """Epoch day index -> calendar date. Inverse of day_from_date."""
    return T_ORIGIN + timedelta(days=index - 1)


class MobilityMetric(Enum):
    MAX_TRAVEL_DISTANCE_KM = "max_travel_distance_km"
    HOME_DWELL_MINUTES = "home_dwell_minutes"


@dataclass(frozen=True)
class CaseSeries:
    """Cumulative confirmed cases on consecutive epoch days."""

    region: str
    days: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.days) != len(self.counts):
            raise ValueError("days and counts must have equal length")
        if not self.days:
            raise ValueError("no observations")
        for a, b in zip(self.days, self.days[1:]):
            if b != a + 1:
                raise ValueError("days must be consecutive with no gaps")
        prev = 0
        for c in self.counts:
            if c < 0:
                raise ValueError("cumulative counts must be non-negative")
            if c < prev:
                raise ValueError("cumulative counts must be non-decreasing")
            prev = c

    def __len__(self) -> int:
        return len(self.days)

    def window(self, start: int, end: int) -> "CaseSeries":
        """Sub-series restricted to epoch days [start, end] inclusive."""
        keep = [(d, c) for d, c in zip(self.days, self.counts) if start <= d <= end]
        if not keep:
            raise ValueError("no observations")
        return CaseSeries(
            self.region,
            tuple(d for d, _ in keep),
            tuple(c for _, c in keep),
        )


@dataclass(frozen=True)
class IncidenceSeries:
    """Daily new cases; running sum reproduces the source CaseSeries."""

    region: str
    days: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.days) != len(self.counts):
            raise ValueError("days and counts must have equal length")
        if any(c < 0 for c in self.counts):
            raise ValueError("incidence must be non-negative")

    def __len__(self) -> int:
        return len(self.days)


@dataclass(frozen=True)
class MobilitySeries:
    """Daily mobility metric; gaps are allowed and kept (fits skip them)."""

    region: str
    metric: MobilityMetric
    days: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.days) != len(self.values):
            raise ValueError("days and values must have equal length")
        for a, b in zip(self.days, self.days[1:]):
            if b <= a:
                raise ValueError("days must be strictly increasing")
        if any(v < 0 for v in self.values):
            raise ValueError("mobility values must be non-negative")

    def __len__(self) -> int:
        return len(self.days)


@dataclass(frozen=True)
class InterventionOrder:
    """A dated statewide intervention splitting a region's series into phases."""

    region: str
    effective_day: int


def clean_cumulative(raw, region: str = "") -> CaseSeries:
    """Build a clean CaseSeries from raw (day-or-date, count) observations.

    Gaps are forward-filled with the last value; counts below the running
    maximum (reporting revisions) are clamped up to it. Duplicate days must
    agree on the count.
    """
    obs = []
    for d, c in raw:
        if isinstance(d, date):
            d = day_from_date(d)
        obs.append((int(d), int(c)))
    if not obs:
        raise ValueError("no observations")
    obs.sort()

    dedup: list[tuple[int, int]] = []
    for d, c in obs:
        if dedup and dedup[-1][0] == d:
            if dedup[-1][1] != c:
                raise ValueError(f"conflicting counts for day {d}")
            continue
        dedup.append((d, c))

    days: list[int] = []
    counts: list[int] = []
    running = 0
    prev_day = None
    for d, c in dedup:
        if prev_day is not None:
            for gap_day in range(prev_day + 1, d):
                days.append(gap_day)
                counts.append(running)
        running = max(running, c)
        days.append(d)
        counts.append(running)
        prev_day = d

    if all(c == 0 for c in counts):
        raise ValueError("no cases")
    return CaseSeries(region, tuple(days), tuple(counts))


def to_incidence(cases: CaseSeries) -> IncidenceSeries:
    """First difference; the first day's incidence is its cumulative count."""
    new = [cases.counts[0]]
    for prev, cur in zip(cases.counts, cases.counts[1:]):
        new.append(cur - prev)
    return IncidenceSeries(cases.region, cases.days, tuple(new))


def split_at_order(
    series: CaseSeries, order: InterventionOrder
) -> tuple[CaseSeries, CaseSeries]:
    """Split around the order date; the effective day belongs to the after phase."""
    cut = order.effective_day
    n_before = sum(1 for d in series.days if d < cut)
    n_after = len(series) - n_before
    if n_before < MIN_PHASE_DAYS or n_after < MIN_PHASE_DAYS:
        raise ValueError("insufficient phase data")
    before = CaseSeries(series.region, series.days[:n_before], series.counts[:n_before])
    after = CaseSeries(series.region, series.days[n_before:], series.counts[n_before:])
    return before, after
