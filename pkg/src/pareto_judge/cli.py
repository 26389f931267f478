"""Command-line interface wiring ingestion, indicators, and figures together.

Exit codes: 0 on success, 1 on input or validation errors, 2 on usage
errors. Outputs are written atomically and only on success; identical
arguments, input files, and seed always produce byte-identical outputs.
The environment variable ``PARETO_JUDGE_THREADS`` (a positive integer) caps
how many comparison cells are evaluated concurrently; it never changes the
outputs.
"""

from __future__ import annotations

import argparse
import os
import sys

from ._io import atomic_write_text
from .confusion_metrics import bac, fbeta, gmean, ppv, tnr, tpr
from .fbeta_analysis import (
    BetaGrid,
    ISOCURVE_METRICS,
    REGION_MODES,
    fbeta_curve,
    fbeta_envelope,
    render_fbeta_plot,
    render_isocurves,
    render_region_plot,
)
from .ingest_report import (
    REPORT_FORMATS,
    ExperimentRecord,
    ParseError,
    aggregate,
    parse_datasets,
    parse_records,
    read_report_csv,
    render_dataset_table,
    render_report,
)
from .objective_space import SolutionSet, pareto_front

THREADS_ENV = "PARETO_JUDGE_THREADS"

METRICS_HEADER = "dataset,method,fold,solution_id,tpr,tnr,ppv,bac,gmean,f1,degenerate"


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _thread_cap() -> int | None:
    raw = os.environ.get(THREADS_ENV, "")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _require_file(path: str, role: str) -> None:
    if not os.path.isfile(path):
        raise ValueError(f"{role} file not found: {path}")


def _parse_indicator_list(raw: str) -> list[str]:
    names = [item.strip() for item in raw.split(",") if item.strip()]
    if not names:
        raise ValueError(f"no indicators given in {raw!r}")
    return names


def _parse_level_list(raw: str) -> list[float]:
    try:
        levels = [float(item) for item in raw.split(",") if item.strip()]
    except ValueError:
        raise ValueError(f"levels must be a comma-separated list of numbers, got {raw!r}")
    if not levels:
        raise ValueError(f"no levels given in {raw!r}")
    return levels


def _filter_fold(
    records: list[ExperimentRecord], fold: int | None, role: str
) -> list[ExperimentRecord]:
    if fold is None:
        return records
    subset = [rec for rec in records if rec.fold == fold]
    if not subset:
        raise ValueError(f"no {role} records for fold {fold}")
    return subset


def _load_records(path: str, payload_kind: str, role: str, fold: int | None, negate=()):
    _require_file(path, role)
    return _filter_fold(parse_records(path, payload_kind, negate), fold, role)


def _parse_negate(raw: str | None) -> tuple[str, ...]:
    if not raw:
        return ()
    return tuple(item.strip() for item in raw.split(",") if item.strip())


def _group_counts_by_dataset(
    records: list[ExperimentRecord],
) -> dict[str, dict[str, list[ExperimentRecord]]]:
    grouped: dict[str, dict[str, list[ExperimentRecord]]] = {}
    for rec in records:
        grouped.setdefault(rec.dataset, {}).setdefault(rec.method, []).append(rec)
    for methods in grouped.values():
        for group in methods.values():
            group.sort(key=lambda rec: rec.solution_id)
    return grouped


def _matching_datasets(front: dict, refs: dict) -> list[str]:
    if set(front) != set(refs):
        raise ValueError(
            f"front and reference files cover different datasets: "
            f"{sorted(set(front) ^ set(refs))}"
        )
    return sorted(front)


def _cmd_metrics(args: argparse.Namespace) -> int:
    records = _load_records(args.input, "counts", "input", args.fold)
    lines = [METRICS_HEADER]
    for rec in records:
        m = rec.payload
        base = [tpr(m), tnr(m), ppv(m)]
        values = base + [bac(m), gmean(m), fbeta(m, 1.0)]
        degenerate = int(not all(v.defined for v in base))
        cells = ",".join(repr(v.value) for v in values)
        lines.append(f"{rec.dataset},{rec.method},{rec.fold},{rec.solution_id},{cells},{degenerate}")
    atomic_write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    negate = _parse_negate(args.negate)
    front = _load_records(args.front, args.payload, "front", args.fold, negate)
    refs = _load_records(args.refs, args.payload, "reference", args.fold, negate)
    report = aggregate(
        front,
        refs,
        _parse_indicator_list(args.indicators),
        seed=args.seed,
        filter_front=args.filter_front,
        threads=_thread_cap(),
    )
    render_report(report, args.format, args.out)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    _require_file(args.input, "report")
    render_report(read_report_csv(args.input), args.format, args.out)
    return 0


def _cmd_fbeta_plot(args: argparse.Namespace) -> int:
    front = _group_counts_by_dataset(_load_records(args.front, "counts", "front", args.fold))
    refs = _group_counts_by_dataset(_load_records(args.refs, "counts", "reference", args.fold))
    grid = BetaGrid.log_spaced(args.beta_min, args.beta_max, args.beta_count)
    plots = []
    for dataset in _matching_datasets(front, refs):
        front_methods = sorted(front[dataset])
        if len(front_methods) != 1:
            raise ValueError(f"front file must hold one method, got {front_methods}")
        members = [rec.payload for rec in front[dataset][front_methods[0]]]
        curves = []
        for method in sorted(refs[dataset]):
            group = refs[dataset][method]
            if len(group) != 1:
                raise ValueError(
                    f"reference method {method!r} has {len(group)} solutions for "
                    f"dataset {dataset!r} fold {args.fold}"
                )
            curves.append(fbeta_curve(group[0].payload, grid, label=method))
        curves.append(fbeta_envelope(members, grid, label=f"{front_methods[0]} envelope"))
        plots.append((os.path.join(args.out, f"{dataset}_fbeta.svg"), curves))
    os.makedirs(args.out, exist_ok=True)
    for path, curves in plots:
        render_fbeta_plot(curves, path)
    return 0


def _cmd_region_plot(args: argparse.Namespace) -> int:
    negate = _parse_negate(args.negate)
    front = _group_counts_by_dataset(
        _load_records(args.front, args.payload, "front", args.fold, negate)
    )
    refs = _group_counts_by_dataset(
        _load_records(args.refs, args.payload, "reference", args.fold, negate)
    )
    plots = []
    for dataset in _matching_datasets(front, refs):
        front_methods = sorted(front[dataset])
        if len(front_methods) != 1:
            raise ValueError(f"front file must hold one method, got {front_methods}")
        methods = sorted(refs[dataset])
        if args.ref_method is not None:
            if args.ref_method not in refs[dataset]:
                raise ValueError(
                    f"reference method {args.ref_method!r} not present for dataset {dataset!r}"
                )
            method = args.ref_method
        elif len(methods) == 1:
            method = methods[0]
        else:
            raise ValueError(
                f"dataset {dataset!r} has several reference methods {methods}; "
                f"pick one with --ref-method"
            )
        group = refs[dataset][method]
        if len(group) != 1:
            raise ValueError(
                f"reference method {method!r} has {len(group)} solutions for "
                f"dataset {dataset!r} fold {args.fold}"
            )
        points = tuple(rec.point() for rec in front[dataset][front_methods[0]])
        solution_front = SolutionSet(front_methods[0], points)
        if args.filter_front:
            solution_front = pareto_front(solution_front)
        path = os.path.join(args.out, f"{dataset}_region-{args.mode}.svg")
        plots.append((path, solution_front, group[0].point()))
    os.makedirs(args.out, exist_ok=True)
    for path, solution_front, ref_point in plots:
        render_region_plot(solution_front, ref_point, args.mode, path)
    return 0


def _cmd_isocurves(args: argparse.Namespace) -> int:
    render_isocurves(args.metric, _parse_level_list(args.levels), args.out)
    return 0


def _cmd_datasets(args: argparse.Namespace) -> int:
    _require_file(args.input, "datasets")
    text = render_dataset_table(parse_datasets(args.input), args.format)
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-judge",
        description="Compare single-solution classifiers against multi-objective solution fronts.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_fold(p: argparse.ArgumentParser, required: bool) -> None:
        p.add_argument(
            "--fold",
            type=int,
            required=required,
            default=None,
            help="restrict to one fold" + ("" if required else " (default: all folds)"),
        )

    p = sub.add_parser("metrics", help="per-record base and aggregated metrics from counts")
    p.add_argument("--in", dest="input", required=True, help="counts csv")
    add_fold(p, required=False)
    p.add_argument("--out", required=True, help="output csv path")
    p.set_defaults(handler=_cmd_metrics)

    p = sub.add_parser("compare", help="aggregate front-vs-reference indicators over folds")
    p.add_argument("--front", required=True, help="front results csv")
    p.add_argument("--refs", required=True, help="reference results csv")
    p.add_argument("--payload", choices=("counts", "objectives"), default="counts")
    p.add_argument(
        "--negate",
        default=None,
        help="objective columns to sign-flip on load (minimization criteria), e.g. obj_2",
    )
    p.add_argument(
        "--indicators",
        default="ed,hv,sdr,ndr",
        help="comma-separated subset of ed,gd,hv,sdr,ndr (default: ed,hv,sdr,ndr)",
    )
    add_fold(p, required=False)
    p.add_argument("--filter-front", action="store_true", help="drop dominated front points first")
    p.add_argument("--seed", type=int, default=0, help="seed for the Monte Carlo estimator")
    p.add_argument("--format", choices=REPORT_FORMATS, default="csv")
    p.add_argument("--out", required=True, help="output report path")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("report", help="render a saved csv report as a table")
    p.add_argument("--in", dest="input", required=True, help="report csv")
    p.add_argument("--format", choices=REPORT_FORMATS, default="markdown")
    p.add_argument("--out", required=True, help="output path")
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("fbeta-plot", help="preference-sweep figure per dataset")
    p.add_argument("--front", required=True, help="front counts csv")
    p.add_argument("--refs", required=True, help="reference counts csv")
    add_fold(p, required=True)
    p.add_argument("--beta-min", type=float, default=0.1)
    p.add_argument("--beta-max", type=float, default=10.0)
    p.add_argument("--beta-count", type=int, default=201)
    p.add_argument("--out", required=True, help="output directory for <dataset>_fbeta.svg")
    p.set_defaults(handler=_cmd_fbeta_plot)

    p = sub.add_parser("region-plot", help="hypervolume or dominance region figure per dataset")
    p.add_argument("--front", required=True, help="front results csv")
    p.add_argument("--refs", required=True, help="reference results csv")
    p.add_argument("--payload", choices=("counts", "objectives"), default="counts")
    p.add_argument(
        "--negate",
        default=None,
        help="objective columns to sign-flip on load (minimization criteria), e.g. obj_2",
    )
    p.add_argument("--mode", choices=REGION_MODES, required=True)
    add_fold(p, required=True)
    p.add_argument("--ref-method", default=None, help="reference method to plot against")
    p.add_argument("--filter-front", action="store_true", help="drop dominated front points first")
    p.add_argument("--out", required=True, help="output directory for <dataset>_region-<mode>.svg")
    p.set_defaults(handler=_cmd_region_plot)

    p = sub.add_parser("isocurves", help="level sets of an aggregate metric")
    p.add_argument("--metric", choices=ISOCURVE_METRICS, required=True)
    p.add_argument("--levels", required=True, help="comma-separated levels in (0, 1)")
    p.add_argument("--out", required=True, help="output svg path")
    p.set_defaults(handler=_cmd_isocurves)

    p = sub.add_parser("datasets", help="dataset characteristics with imbalance ratios")
    p.add_argument("--in", dest="input", required=True, help="datasets csv")
    p.add_argument("--format", choices=REPORT_FORMATS, default="markdown")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(handler=_cmd_datasets)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv and execute one subcommand; returns the exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except ParseError as exc:
        return _fail(str(exc))
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


def main() -> None:
    sys.exit(run(sys.argv[1:]))
