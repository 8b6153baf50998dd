"""Per-region before/after-order analysis and the cross-region correlation study."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .growth import (
    DoublingTimeSummary,
    GrowthFit,
    LinearFit,
    doubling_time_exponential,
    doubling_time_power_law,
    empirical_doubling_time,
    fit_exponential,
    fit_power_law,
)
from .stats import CorrelationResult, QuantileSummary, correlation_with_ci, median_iqr
from .timeseries import CaseSeries, InterventionOrder, split_at_order


@dataclass(frozen=True)
class PhaseReport:
    """Doubling times before and after the order for one region (one Table row)."""

    region: str
    order_day: Optional[int]
    skipped: bool = False
    skip_reason: Optional[str] = None
    empirical_before: Optional[DoublingTimeSummary] = None
    empirical_after: Optional[DoublingTimeSummary] = None
    exp_fit_before: Optional[GrowthFit] = None
    exp_fit_after: Optional[GrowthFit] = None
    pl_fit_before: Optional[GrowthFit] = None
    pl_fit_after: Optional[GrowthFit] = None
    exp_dt_before: Optional[float] = None
    exp_dt_after: Optional[float] = None
    pl_dt_before: Optional[DoublingTimeSummary] = None
    pl_dt_after: Optional[DoublingTimeSummary] = None
    change: Optional[float] = None


@dataclass(frozen=True)
class NationalSummary:
    """Cross-region distribution of the per-region empirical medians."""

    before: QuantileSummary
    after: QuantileSummary
    analyzed: int
    skipped: int


def _skipped(region: str, order_day: Optional[int], reason: str) -> PhaseReport:
    return PhaseReport(region=region, order_day=order_day, skipped=True, skip_reason=reason)


def analyze_region(cases: CaseSeries, order: Optional[InterventionOrder]) -> PhaseReport:
    """Run all three doubling-time pathways on each phase around the order."""
    if order is None:
        return _skipped(cases.region, None, "no order")
    try:
        before, after = split_at_order(cases, order)
    except ValueError as exc:
        return _skipped(cases.region, order.effective_day, str(exc))

    try:
        emp_before = empirical_doubling_time(before)
        emp_after = empirical_doubling_time(after)
    except ValueError as exc:
        return _skipped(cases.region, order.effective_day, str(exc))

    def _try(fn, *args):
        try:
            return fn(*args)
        except ValueError:
            return None

    exp_b = _try(fit_exponential, before)
    exp_a = _try(fit_exponential, after)
    pl_b = _try(fit_power_law, before)
    pl_a = _try(fit_power_law, after)
    win_b = (before.days[0], before.days[-1])
    win_a = (after.days[0], after.days[-1])
    return PhaseReport(
        region=cases.region,
        order_day=order.effective_day,
        empirical_before=emp_before,
        empirical_after=emp_after,
        exp_fit_before=exp_b,
        exp_fit_after=exp_a,
        pl_fit_before=pl_b,
        pl_fit_after=pl_a,
        exp_dt_before=doubling_time_exponential(exp_b.b) if exp_b else None,
        exp_dt_after=doubling_time_exponential(exp_a.b) if exp_a else None,
        pl_dt_before=_try(doubling_time_power_law, pl_b, win_b) if pl_b else None,
        pl_dt_after=_try(doubling_time_power_law, pl_a, win_a) if pl_a else None,
        change=emp_after.median - emp_before.median,
    )


def national_summary(reports: Sequence[PhaseReport]) -> NationalSummary:
    """Summarize region empirical medians per phase (median/IQR/range)."""
    valid = [r for r in reports if not r.skipped]
    if not valid:
        raise ValueError("no analyzable regions")
    before = median_iqr([r.empirical_before.median for r in valid])
    after = median_iqr([r.empirical_after.median for r in valid])
    return NationalSummary(
        before=before,
        after=after,
        analyzed=len(valid),
        skipped=len(reports) - len(valid),
    )


def correlate_mobility_growth(
    case_fits: Mapping[str, GrowthFit],
    mobility_fits: Mapping[str, LinearFit],
) -> tuple[CorrelationResult, int]:
    """Pearson correlation between case growth coefficients and mobility slopes.

    Regions are matched by identifier; the count of regions present on only
    one side is returned alongside the correlation.
    """
    matched = sorted(set(case_fits) & set(mobility_fits))
    excluded = len(set(case_fits) | set(mobility_fits)) - len(matched)
    if len(matched) < 4:
        raise ValueError("need at least 4 matched regions")
    x = [case_fits[r].b for r in matched]
    y = [mobility_fits[r].slope for r in matched]
    return correlation_with_ci(x, y), excluded
