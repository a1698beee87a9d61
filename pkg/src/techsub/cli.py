"""Command-line front end.

Commands: fit-killer (log-log substitution regression), fisher-pry
(share substitution line), waves (technological-cycle analytics) and
simulate (generate logistic killer/victim series for self-validation).

Exit codes: 0 success, 2 usage, 3 parse/IO failure, 4 validation
failure, 5 estimation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import EstimationError, ParseError, ValidationError
from .estimation import (
    AbsoluteTolerance,
    TTestTolerance,
    fisher_pry_fit,
    killer_fit,
)
from .growth import LogisticParams, logistic_value
from .ingest import (
    CSV_HEADER,
    TimeSeries,
    align_pair,
    load_manifest,
    read_series,
)
from .reporting import (
    VERSION,
    build_report,
    fisher_pry_payload,
    killer_fit_payload,
    regime_narrative,
    render_report,
)
from .svgplot import render_scatter
from .waves import (
    extract_wave_events,
    intro_gap_diagnostic,
    summarize_waves,
    takeover_year,
    wave_metrics,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_ESTIMATION = 5


def _parse_period(text: str) -> tuple[int, int]:
    try:
        first, last = text.split(":")
        bounds = (int(first), int(last))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected FIRST:LAST, got {text!r}")
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"period first > last in {text!r}")
    return bounds


def _parse_tolerance(text: str):
    if text == "ttest":
        return TTestTolerance()
    if text.startswith("abs:"):
        try:
            value = float(text[4:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}")
        if value < 0:
            raise argparse.ArgumentTypeError("tolerance must be >= 0")
        return AbsoluteTolerance(value)
    raise argparse.ArgumentTypeError(
        f"expected 'ttest' or 'abs:X', got {text!r}"
    )


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _positive_log_pairs(pair):
    years, lv, lk = [], [], []
    for year, kv, vv in zip(pair.years, pair.killer_values, pair.victim_values):
        if kv > 0.0 and vv > 0.0:
            years.append(year)
            lv.append(math.log(vv))
            lk.append(math.log(kv))
    return years, lv, lk


def _cmd_fit_killer(args) -> int:
    killer = read_series(args.killer_csv)
    victim = read_series(args.victim_csv)
    fit = killer_fit(killer, victim, bounds=args.period, policy=args.regime_tolerance)

    warnings = []
    if fit.n_dropped:
        warnings.append(
            f"{fit.n_dropped} aligned observation(s) dropped for non-positive levels"
        )
    report = build_report(
        command="fit-killer",
        dataset=f"{killer.name} (killer) vs {victim.name} (victim)",
        payload=killer_fit_payload(fit),
        inputs=[args.killer_csv, args.victim_csv],
        narrative=regime_narrative(fit),
        warnings=warnings,
        timestamp=not args.no_timestamp,
        version=VERSION,
    )
    _emit(render_report(report), args.output)

    if args.plot:
        pair = align_pair(killer, victim, args.period)
        _, lv, lk = _positive_log_pairs(pair)
        svg = render_scatter(
            lv,
            lk,
            title=f"{killer.name} vs {victim.name} (log-log)",
            xlabel=f"ln {victim.name} level",
            ylabel=f"ln {killer.name} level",
            line=(fit.regression.alpha, fit.regression.beta),
            annotation=f"B = {fit.regression.beta:.3f}",
        )
        Path(args.plot).write_text(svg, encoding="utf-8")
    return EXIT_OK


def _cmd_fisher_pry(args) -> int:
    shares = read_series(args.shares_csv)
    shares = shares.restrict(args.period)
    fit = fisher_pry_fit(shares)

    report = build_report(
        command="fisher-pry",
        dataset=shares.name,
        payload=fisher_pry_payload(fit),
        inputs=[args.shares_csv],
        narrative=(
            f"Fitted share odds double every {math.log(2) / abs(fit.slope):.2f} "
            f"years; half-substitution at year {fit.t_half:.2f}."
        ),
        timestamp=not args.no_timestamp,
        version=VERSION,
    )
    _emit(render_report(report), args.output)

    if args.plot:
        years = [float(y) for y in shares.years]
        logits = [math.log(f / (1.0 - f)) for f in shares.values]
        svg = render_scatter(
            years,
            logits,
            title=f"{shares.name}: share substitution",
            xlabel="year",
            ylabel="ln(f / (1 - f))",
            line=(fit.intercept, fit.slope),
            annotation=f"slope = {fit.slope:.4f} per year",
            vline=(fit.t_half, f"t_half = {fit.t_half:.2f}"),
        )
        Path(args.plot).write_text(svg, encoding="utf-8")
    return EXIT_OK


def _wave_entry(events, metrics) -> dict:
    entry = {
        "name": events.tech_name,
        "begin_year": events.begin_year,
        "peak_year": events.peak_year,
        "end_year": events.end_year,
        "in_progress": not events.complete,
        "flag": "" if events.complete else "*",
    }
    if metrics is None:
        entry["metrics"] = None
    else:
        entry["metrics"] = {
            "upwave_years": metrics.upwave_years,
            "downwave_years": metrics.downwave_years,
            "cycle_years": metrics.cycle_years,
            "upwave_fraction": metrics.upwave_fraction,
            "downwave_fraction": metrics.downwave_fraction,
        }
    return entry


def _cmd_waves(args) -> int:
    manifest = load_manifest(args.manifest)
    if not manifest.series:
        raise ValidationError(
            f"{args.manifest}: manifest lists no series (nothing to analyze)"
        )

    warnings = []
    processed = []  # (series, events) in manifest order
    entries = []
    completed_metrics = []
    for ref in manifest.series:
        try:
            series = manifest.resolve(ref).restrict(manifest.period)
            events = extract_wave_events(series, args.threshold)
        except (ParseError, ValidationError) as exc:
            warnings.append(f"{ref.file}: {exc}")
            continue
        metrics = wave_metrics(events) if events.complete else None
        if metrics is not None:
            completed_metrics.append(metrics)
        processed.append((series, events))
        entries.append(_wave_entry(events, metrics))

    if not processed:
        raise ValidationError(f"{args.manifest}: no series could be analyzed")

    summary = summarize_waves(
        completed_metrics, n_excluded=len(processed) - len(completed_metrics)
    )
    takeovers = []
    gap_pairs = []
    for (old_series, old_events), (new_series, new_events) in zip(
        processed, processed[1:]
    ):
        try:
            crossing = takeover_year(new_series, old_series)
        except ValidationError as exc:
            warnings.append(str(exc))
            crossing = None
        takeovers.append(
            {
                "established": old_series.name,
                "challenger": new_series.name,
                "year": crossing.year if crossing else None,
                "challenger_value": crossing.new_value if crossing else None,
                "established_value": crossing.old_value if crossing else None,
                "established_share_pct": (
                    crossing.established_share_pct if crossing else None
                ),
            }
        )
        if old_events.complete:
            gap_pairs.append((old_events, new_events))
    gaps = intro_gap_diagnostic(gap_pairs)

    payload = {
        "technologies": entries,
        "summary": {
            "n_waves": summary.n_waves,
            "n_excluded": summary.n_excluded,
            "upwave_years": {"mean": summary.mean_upwave, "sd": summary.sd_upwave},
            "downwave_years": {
                "mean": summary.mean_downwave,
                "sd": summary.sd_downwave,
            },
            "cycle_years": {"mean": summary.mean_cycle, "sd": summary.sd_cycle},
            "upwave_fraction": {
                "mean": summary.mean_upwave_fraction,
                "sd": summary.sd_upwave_fraction,
            },
            "downwave_fraction": {
                "mean": summary.mean_downwave_fraction,
                "sd": summary.sd_downwave_fraction,
            },
        },
        "takeovers": takeovers,
        "intro_gaps": {
            "points": [
                {"gap_years": g, "disruption_years": d} for g, d in gaps.points
            ],
            "spearman": gaps.spearman,
        },
    }
    report = build_report(
        command="waves",
        dataset=manifest.dataset,
        payload=payload,
        inputs=[args.manifest],
        narrative=(
            f"{summary.n_waves} completed wave(s) summarized, "
            f"{summary.n_excluded} still in progress (flagged '*')."
        ),
        warnings=warnings,
        timestamp=not args.no_timestamp,
        version=VERSION,
    )
    _emit(render_report(report), args.output)
    return EXIT_OK


def _load_sim_params(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})", line=exc.lineno)
    for key in ("victim", "killer", "years"):
        if key not in doc:
            raise ParseError(f"{path}: missing required key {key!r}")
    return doc


def _sim_series(
    spec: dict, role: str, years, sigma: float, rng
) -> tuple[TimeSeries, LogisticParams]:
    try:
        params = LogisticParams(
            K=float(spec["K"]), a=float(spec["a"]), b=float(spec["b"])
        )
    except KeyError as exc:
        raise ParseError(f"{role} parameters missing key {exc}")
    values = [logistic_value(params, t) for t in years]
    if sigma > 0.0:
        noise = rng.standard_normal(len(values))
        values = [v * math.exp(sigma * e) for v, e in zip(values, noise)]
    name = spec.get("name", role)
    return TimeSeries(
        name=name,
        unit=spec.get("unit", ""),
        points=tuple(zip(years, values)),
    ), params


def _write_sim_csv(path: str, series: TimeSeries, params, sigma, seed) -> None:
    lines = [
        f"# simulated logistic series {series.name!r}: "
        f"K={params.K!r}, a={params.a!r}, b={params.b!r}, "
        f"noise_sigma={sigma!r}, seed={seed}",
        CSV_HEADER,
    ]
    lines.extend(f"{year},{value!r}" for year, value in series.points)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cmd_simulate(args) -> int:
    doc = _load_sim_params(args.params)
    yr = doc["years"]
    if not isinstance(yr, dict) or "first" not in yr or "last" not in yr:
        raise ParseError(f"{args.params}: 'years' must hold 'first' and 'last'")
    first, last = int(yr["first"]), int(yr["last"])
    if first > last:
        raise ValidationError(f"empty year range {first}:{last}")
    years = list(range(first, last + 1))
    sigma = float(doc.get("noise_sigma", 0.0))
    if sigma < 0:
        raise ValidationError(f"noise_sigma must be >= 0, got {sigma}")
    seed = int(doc.get("seed", 0))
    rng = np.random.default_rng(seed)

    victim, victim_params = _sim_series(doc["victim"], "victim", years, sigma, rng)
    killer, killer_params = _sim_series(doc["killer"], "killer", years, sigma, rng)
    _write_sim_csv(args.victim_out, victim, victim_params, sigma, seed)
    _write_sim_csv(args.killer_out, killer, killer_params, sigma, seed)
    sys.stdout.write(
        f"wrote {args.victim_out} ({len(victim)} rows) and "
        f"{args.killer_out} ({len(killer)} rows)\n"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="techsub",
        description=(
            "Quantify competitive substitution between a new (killer) "
            "technology and an established (victim) technology."
        ),
    )
    parser.add_argument("--version", action="version", version=f"techsub {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    common_report = argparse.ArgumentParser(add_help=False)
    common_report.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit the timestamp field (byte-identical reruns)",
    )
    common_report.add_argument(
        "--output", metavar="PATH", help="write the report here instead of stdout"
    )

    p = sub.add_parser(
        "fit-killer",
        parents=[common_report],
        help="log-log OLS of killer level on victim level with regime label",
    )
    p.add_argument("killer_csv", help="CSV of the killer technology series")
    p.add_argument("victim_csv", help="CSV of the victim technology series")
    p.add_argument(
        "--period",
        type=_parse_period,
        metavar="FIRST:LAST",
        help="restrict both series to this year range",
    )
    p.add_argument("--plot", metavar="PATH", help="write a log-log SVG scatter here")
    p.add_argument(
        "--regime-tolerance",
        type=_parse_tolerance,
        default=TTestTolerance(),
        metavar="{ttest|abs:X}",
        help="proportional-growth band: slope t test (default) or fixed |B-1| <= X",
    )
    p.set_defaults(func=_cmd_fit_killer)

    p = sub.add_parser(
        "fisher-pry",
        parents=[common_report],
        help="fit the market-share substitution line ln(f/(1-f)) vs year",
    )
    p.add_argument("shares_csv", help="CSV of market shares in (0, 1)")
    p.add_argument(
        "--period", type=_parse_period, metavar="FIRST:LAST",
        help="restrict the series to this year range",
    )
    p.add_argument("--plot", metavar="PATH", help="write the substitution SVG here")
    p.set_defaults(func=_cmd_fisher_pry)

    p = sub.add_parser(
        "waves",
        parents=[common_report],
        help="technological-cycle events, disruption periods and summaries",
    )
    p.add_argument("manifest", help="JSON manifest listing series in succession order")
    p.add_argument(
        "--threshold",
        type=float,
        default=0.0,
        metavar="V",
        help="activity threshold: a year counts as alive when value > V (default 0)",
    )
    p.set_defaults(func=_cmd_waves)

    p = sub.add_parser(
        "simulate",
        help="generate exact (optionally noisy) killer/victim logistic series",
    )
    p.add_argument("params", help="JSON parameter file (see README for the schema)")
    p.add_argument("--killer-out", required=True, metavar="PATH")
    p.add_argument("--victim-out", required=True, metavar="PATH")
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"techsub: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"techsub: i/o error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"techsub: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except EstimationError as exc:
        print(f"techsub: estimation error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION


if __name__ == "__main__":
    sys.exit(main())
