"""Epidemic growth, doubling-time, and intervention-effect analysis toolkit."""

__version__ = "0.1.0"

from .growth import (
    DoublingTimeSummary,
    GrowthFit,
    LinearFit,
    doubling_time_exponential,
    doubling_time_power_law,
    empirical_doubling_time,
    fit_exponential,
    fit_exponential_values,
    fit_linear,
    fit_power_law,
    fit_power_law_values,
)
from .phases import NationalSummary, PhaseReport, analyze_region, correlate_mobility_growth, national_summary
from .renewal import (
    RtEstimate,
    SerialInterval,
    discretize_serial_interval,
    estimate_rt,
    infection_potential,
    simulate_renewal,
    spike_serial_interval,
)
from .stats import CorrelationResult, fisher_ci, median_iqr, p_value_pearson, pearson
from .tenhundred import DecadeCrossings, TenHundredPoint, decade_crossings, tenhundred_points
from .timeseries import (
    CaseSeries,
    IncidenceSeries,
    InterventionOrder,
    MobilityMetric,
    MobilitySeries,
    clean_cumulative,
    date_from_day,
    day_from_date,
    split_at_order,
    to_incidence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
