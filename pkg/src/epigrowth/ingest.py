"""CSV and config parsing into domain types, with strict validation.

Input schemas (long format, ISO-8601 dates, comma delimiter, header row):
  cases:    region,date,cumulative_cases
  mobility: region,date,value
  orders:   region,effective_date
Run configuration is a flat key=value text file.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .renewal import DEFAULT_SI_MEAN, DEFAULT_SI_SD, DEFAULT_WINDOW
from .timeseries import (
    CaseSeries,
    InterventionOrder,
    MobilityMetric,
    MobilitySeries,
    clean_cumulative,
    day_from_date,
)


class ParseError(ValueError):
    """Malformed input file; message names the offending line where possible."""


class ConfigError(ValueError):
    """Invalid or unknown run-configuration key/value."""


@dataclass(frozen=True)
class RunConfig:
    analysis_start: date = date(2020, 3, 11)
    analysis_end: date = date(2020, 4, 10)
    serial_interval_mean: float = DEFAULT_SI_MEAN
    serial_interval_sd: float = DEFAULT_SI_SD
    rt_window: int = DEFAULT_WINDOW
    quantile_method: str = "linear"
    output_dir: str = "out"

    def __post_init__(self):
        if self.analysis_start >= self.analysis_end:
            raise ConfigError("analysis_start must precede analysis_end")
        if self.serial_interval_mean <= 0 or self.serial_interval_sd <= 0:
            raise ConfigError("serial-interval parameters must be positive")
        if self.rt_window < 1:
            raise ConfigError("rt_window must be >= 1")
        if self.quantile_method != "linear":
            raise ConfigError(f"unsupported quantile_method: {self.quantile_method}")

    @property
    def day_window(self) -> tuple[int, int]:
        return (day_from_date(self.analysis_start), day_from_date(self.analysis_end))


_CONFIG_PARSERS = {
    "analysis_start": date.fromisoformat,
    "analysis_end": date.fromisoformat,
    "serial_interval_mean": float,
    "serial_interval_sd": float,
    "rt_window": int,
    "quantile_method": str,
    "output_dir": str,
}


def load_config(path) -> RunConfig:
    """Parse a key=value config file; unknown keys are an error."""
    kwargs = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            kwargs[key] = _CONFIG_PARSERS[key](value)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    return RunConfig(**kwargs)


def _parse_iso_date(text: str, lineno: int):
    try:
        return date.fromisoformat(text.strip())
    except ValueError as exc:
        raise ParseError(f"line {lineno}: unparseable date {text!r}") from exc


def _read_rows(path, expected_columns):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, header row required") from None
        header = [h.strip() for h in header]
        if header != list(expected_columns):
            raise ParseError(
                f"{path}: expected header {','.join(expected_columns)}, got {','.join(header)}"
            )
        rows = []
        for lineno, row in enumerate(reader, 2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(expected_columns):
                raise ParseError(f"line {lineno}: expected {len(expected_columns)} fields")
            rows.append((lineno, [cell.strip() for cell in row]))
    return rows


def parse_cases_csv(path, config: RunConfig | None = None) -> list[CaseSeries]:
    """One cleaned CaseSeries per region, clipped to the analysis window."""
    cfg = config or RunConfig()
    lo, hi = cfg.day_window
    rows = _read_rows(path, ("region", "date", "cumulative_cases"))
    per_region: dict[str, dict[int, int]] = {}
    for lineno, (region, date_text, count_text) in rows:
        if not region:
            raise ParseError(f"line {lineno}: empty region")
        day = day_from_date(_parse_iso_date(date_text, lineno))
        try:
            count = int(count_text)
        except ValueError:
            raise ParseError(f"line {lineno}: bad count {count_text!r}") from None
        if count < 0:
            raise ParseError(f"line {lineno}: negative count {count}")
        if not (lo <= day <= hi):
            continue
        seen = per_region.setdefault(region, {})
        if day in seen and seen[day] != count:
            raise ParseError(f"line {lineno}: conflicting counts for ({region}, {date_text})")
        seen[day] = count
    series = []
    for region in sorted(per_region):
        obs = sorted(per_region[region].items())
        try:
            series.append(clean_cumulative(obs, region=region))
        except ValueError as exc:
            raise ParseError(f"region {region}: {exc}") from exc
    if not series:
        raise ParseError(f"{path}: no data rows in analysis window")
    return series


def parse_mobility_csv(path, metric: MobilityMetric, config: RunConfig | None = None) -> list[MobilitySeries]:
    """One MobilitySeries per region; gaps are kept, values must be non-negative."""
    cfg = config or RunConfig()
    lo, hi = cfg.day_window
    rows = _read_rows(path, ("region", "date", "value"))
    per_region: dict[str, dict[int, float]] = {}
    for lineno, (region, date_text, value_text) in rows:
        if not region:
            raise ParseError(f"line {lineno}: empty region")
        day = day_from_date(_parse_iso_date(date_text, lineno))
        try:
            value = float(value_text)
        except ValueError:
            raise ParseError(f"line {lineno}: bad value {value_text!r}") from None
        if value < 0:
            raise ParseError(f"line {lineno}: negative value {value}")
        if not (lo <= day <= hi):
            continue
        seen = per_region.setdefault(region, {})
        if day in seen and seen[day] != value:
            raise ParseError(f"line {lineno}: conflicting values for ({region}, {date_text})")
        seen[day] = value
    series = []
    for region in sorted(per_region):
        obs = sorted(per_region[region].items())
        series.append(
            MobilitySeries(
                region=region,
                metric=metric,
                days=tuple(d for d, _ in obs),
                values=tuple(v for _, v in obs),
            )
        )
    return series


def parse_orders_csv(path) -> list[InterventionOrder]:
    """Intervention registry; at most one order per region."""
    rows = _read_rows(path, ("region", "effective_date"))
    orders: dict[str, InterventionOrder] = {}
    for lineno, (region, date_text) in rows:
        if not region:
            raise ParseError(f"line {lineno}: empty region")
        if region in orders:
            raise ParseError(f"line {lineno}: duplicate region {region!r}")
        day = day_from_date(_parse_iso_date(date_text, lineno))
        orders[region] = InterventionOrder(region=region, effective_day=day)
    return [orders[r] for r in sorted(orders)]
