"""Command-line front end wiring ingestion through analysis.

Subcommands: fit, phase, rt, correlate, tenhundred. All outputs are
machine-readable (CSV/flat text) and deterministic: regions are emitted in
lexicographic order and the manifest timestamp honors SOURCE_DATE_EPOCH.

Exit codes: 0 success (including partial success with warnings),
1 input/parse error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .growth import (
    doubling_time_exponential,
    fit_exponential,
    fit_linear,
    fit_power_law,
)
from .ingest import (
    ConfigError,
    ParseError,
    RunConfig,
    load_config,
    parse_cases_csv,
    parse_mobility_csv,
    parse_orders_csv,
)
from .phases import analyze_region, correlate_mobility_growth, national_summary
from .renewal import discretize_serial_interval, estimate_rt
from .tenhundred import decade_crossings, tenhundred_points
from .timeseries import MobilityMetric, date_from_day, to_incidence

CONFIG_ENV_VAR = "EPIGROWTH_CONFIG"

_METRICS = {
    "distance": MobilityMetric.MAX_TRAVEL_DISTANCE_KM,
    "dwell": MobilityMetric.HOME_DWELL_MINUTES,
}


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _f3(x) -> str:
    return "" if x is None else format(float(x), ".3f")


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        dt = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        dt = datetime.now(tz=timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def _write_manifest(out_dir: Path, command: str, config: RunConfig, inputs: dict, statuses: dict[str, str]):
    """RunManifest: config echo, input digests, version, per-region status."""
    lines = [
        f"tool_version={__version__}",
        f"command={command}",
        f"timestamp={_timestamp()}",
        f"config.analysis_start={config.analysis_start.isoformat()}",
        f"config.analysis_end={config.analysis_end.isoformat()}",
        f"config.serial_interval_mean={config.serial_interval_mean}",
        f"config.serial_interval_sd={config.serial_interval_sd}",
        f"config.rt_window={config.rt_window}",
        f"config.quantile_method={config.quantile_method}",
    ]
    for name in sorted(inputs):
        lines.append(f"input.{name}={inputs[name]}:sha256:{_sha256(inputs[name])}")
    for region in sorted(statuses):
        lines.append(f"region.{region}={statuses[region]}")
    (out_dir / "run_manifest.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_run_config(args) -> RunConfig:
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    return load_config(path) if path else RunConfig()


def cmd_fit(args) -> int:
    config = _load_run_config(args)
    cases = parse_cases_csv(args.cases, config)
    models = {"exp": ["exponential"], "powerlaw": ["power_law"], "both": ["exponential", "power_law"]}[args.model]
    statuses: dict[str, str] = {}
    rows = []  # (region, model, fit)
    for series in cases:
        ok = 0
        for model in models:
            try:
                fit = fit_exponential(series) if model == "exponential" else fit_power_law(series)
                rows.append((series.region, model, fit))
                ok += 1
            except ValueError as exc:
                rows.append((series.region, model, exc))
        statuses[series.region] = "ok" if ok else "error:fit failed"
    if all(isinstance(f, Exception) for _, _, f in rows):
        print("error: no region could be fitted", file=sys.stderr)
        return 1

    # rank regions by growth coefficient within each model, largest b first
    ranks: dict[tuple[str, str], int] = {}
    for model in models:
        fitted = sorted(
            ((r, f) for r, m, f in rows if m == model and not isinstance(f, Exception)),
            key=lambda rf: -rf[1].b,
        )
        for rank, (region, _) in enumerate(fitted, 1):
            ranks[(model, region)] = rank

    out = ["region,model,rank,a,b,k,r_squared,rmse,window_start,window_end"]
    for region, model, fit in sorted(rows, key=lambda r: (r[0], r[1])):
        if isinstance(fit, Exception):
            continue
        out.append(
            ",".join(
                [
                    region,
                    model,
                    str(ranks[(model, region)]),
                    _g17(fit.a),
                    _g17(fit.b),
                    _g17(fit.k),
                    _g17(fit.r_squared),
                    _g17(fit.rmse),
                    str(fit.window[0]),
                    str(fit.window[1]),
                ]
            )
        )
    out_dir = Path(args.out)
    (out_dir / "fits.csv").write_text("\n".join(out) + "\n", encoding="utf-8")
    _write_manifest(out_dir, "fit", config, {"cases": args.cases}, statuses)
    return 0


def cmd_phase(args) -> int:
    config = _load_run_config(args)
    cases = parse_cases_csv(args.cases, config)
    orders = {o.region: o for o in parse_orders_csv(args.orders)} if args.orders else {}
    if not args.orders:
        print("warning: no orders file; all regions will be skipped", file=sys.stderr)

    reports = [analyze_region(series, orders.get(series.region)) for series in cases]
    statuses = {
        r.region: ("ok" if not r.skipped else f"skipped:{r.skip_reason}") for r in reports
    }

    out = ["region,status,order_date,before_median,after_median,change"]
    for r in sorted(reports, key=lambda r: r.region):
        order_date = date_from_day(r.order_day).isoformat() if r.order_day else ""
        if r.skipped:
            out.append(f"{r.region},skipped:{r.skip_reason},{order_date},,,")
        else:
            out.append(
                f"{r.region},ok,{order_date},"
                f"{_f3(r.empirical_before.median)},{_f3(r.empirical_after.median)},{_f3(r.change)}"
            )
    out_dir = Path(args.out)
    (out_dir / "phase_report.csv").write_text("\n".join(out) + "\n", encoding="utf-8")

    lines = []
    try:
        summary = national_summary(reports)
        for phase, s in (("before", summary.before), ("after", summary.after)):
            lines += [
                f"{phase}.median={_f3(s.median)}",
                f"{phase}.iqr={_f3(s.iqr)}",
                f"{phase}.min={_f3(s.minimum)}",
                f"{phase}.max={_f3(s.maximum)}",
            ]
        lines += [f"regions_analyzed={summary.analyzed}", f"regions_skipped={summary.skipped}"]
    except ValueError:
        lines = ["no analyzable regions", f"regions_skipped={len(reports)}"]
    skipped = [r for r in sorted(reports, key=lambda r: r.region) if r.skipped]
    if skipped:
        lines.append("skipped:")
        lines += [f"  {r.region}: {r.skip_reason}" for r in skipped]
    (out_dir / "national_summary.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    inputs = {"cases": args.cases}
    if args.orders:
        inputs["orders"] = args.orders
    _write_manifest(out_dir, "phase", config, inputs, statuses)
    return 0


def cmd_rt(args) -> int:
    config = _load_run_config(args)
    cases = parse_cases_csv(args.cases, config)
    si = discretize_serial_interval(config.serial_interval_mean, config.serial_interval_sd, 20)
    statuses: dict[str, str] = {}
    out = ["region,day,mean,lo,hi,shape,rate"]
    for series in cases:
        estimates = estimate_rt(to_incidence(series), si, window=config.rt_window)
        statuses[series.region] = "ok" if estimates else "skipped:series too short"
        for e in estimates:
            out.append(
                f"{series.region},{e.day},{_g17(e.mean)},{_g17(e.ci95[0])},{_g17(e.ci95[1])},"
                f"{_g17(e.posterior_shape)},{_g17(e.posterior_rate)}"
            )
    out_dir = Path(args.out)
    (out_dir / "rt.csv").write_text("\n".join(out) + "\n", encoding="utf-8")
    _write_manifest(out_dir, "rt", config, {"cases": args.cases}, statuses)
    return 0


def cmd_correlate(args) -> int:
    config = _load_run_config(args)
    cases = parse_cases_csv(args.cases, config)
    metric = _METRICS[args.metric]
    mobility = parse_mobility_csv(args.mobility, metric, config)

    case_fits, statuses = {}, {}
    for series in cases:
        try:
            case_fits[series.region] = fit_power_law(series)
            statuses[series.region] = "ok"
        except ValueError as exc:
            statuses[series.region] = f"error:{exc}"
    mobility_fits = {}
    for series in mobility:
        try:
            mobility_fits[series.region] = fit_linear(series)
            statuses.setdefault(series.region, "ok")
        except ValueError as exc:
            statuses.setdefault(series.region, f"error:{exc}")

    result, excluded = correlate_mobility_growth(case_fits, mobility_fits)
    lines = [
        f"metric={args.metric}",
        f"r={_g17(result.r)}",
        f"n={result.n}",
        f"ci95_lo={_g17(result.ci95[0])}",
        f"ci95_hi={_g17(result.ci95[1])}",
        f"p_value={_g17(result.p_value)}",
        f"excluded_regions={excluded}",
    ]
    out_dir = Path(args.out)
    (out_dir / "correlation.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_manifest(
        out_dir, "correlate", config, {"cases": args.cases, "mobility": args.mobility}, statuses
    )
    return 0


def cmd_tenhundred(args) -> int:
    config = _load_run_config(args)
    cases = parse_cases_csv(args.cases, config)
    statuses: dict[str, str] = {}
    out = ["region,point_index,x,y,classification"]
    for series in cases:
        crossings = decade_crossings(series)
        points = tenhundred_points(crossings)
        statuses[series.region] = "ok" if points else "skipped:fewer than 3 decade crossings"
        for p in points:
            out.append(f"{p.region},{p.index},{_g17(p.x)},{_g17(p.y)},{p.classification}")
    out_dir = Path(args.out)
    (out_dir / "tenhundred.csv").write_text("\n".join(out) + "\n", encoding="utf-8")
    _write_manifest(out_dir, "tenhundred", config, {"cases": args.cases}, statuses)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epigrowth",
        description="Quantify epidemic growth before/after interventions: "
        "growth-model fits, doubling times, renewal-equation R_t, and "
        "mobility-growth correlation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mobility=False, orders=False):
        p.add_argument("--cases", required=True, help="cases CSV (region,date,cumulative_cases)")
        if mobility:
            p.add_argument("--mobility", required=True, help="mobility CSV (region,date,value)")
            p.add_argument(
                "--metric", choices=sorted(_METRICS), default="distance", help="mobility metric kind"
            )
        if orders:
            p.add_argument("--orders", help="orders CSV (region,effective_date)")
        p.add_argument(
            "--config", help=f"key=value run config (default: ${CONFIG_ENV_VAR} or built-ins)"
        )
        p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("fit", help="fit growth models and rank regions by growth coefficient")
    common(p)
    p.add_argument("--model", choices=["exp", "powerlaw", "both"], default="both")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("phase", help="before/after-order doubling-time report")
    common(p, orders=True)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("rt", help="renewal-equation reproduction-number estimates")
    common(p)
    p.set_defaults(func=cmd_rt)

    p = sub.add_parser("correlate", help="mobility-change vs case-growth correlation")
    common(p, mobility=True)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("tenhundred", help="ten-hundred plot coordinates")
    common(p)
    p.set_defaults(func=cmd_tenhundred)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
