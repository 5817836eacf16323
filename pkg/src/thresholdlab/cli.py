"""Command-line interface.

Subcommands mirror the library surface: validate, metrics, sweep, inverse,
optimize, preview, fetch, synth, fixture, serve. Human-facing numbers print
with three decimals; machine formats (--format csv/json) keep full precision.
Exit status: 0 success, 1 domain errors (infeasible, bad data), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .curve import ThresholdCurve, build_curve, point_at
from .dataset import Dataset
from .ingest import (
    IngestError,
    SynthConfig,
    fixture_t04,
    load_path,
    parse_any,
    synthesize,
    write_csv,
)
from .metrics import ABOVE_MAX
from .ores import ScoreRequest, build_dataset, fetch_scores, read_labels_csv, read_rev_ids
from .preview import CATEGORY_ORDER, IconColor, IconShape, allocate_icons, legend
from .queries import (
    InfeasibleError,
    MetricId,
    UndefinedMetricError,
    inverse_for_metric,
    optimize,
    parse_constraint,
)


def unit_float(text: str) -> float:
    """argparse type for a float in [0, 1]; violations are usage errors."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return value


def constraint_arg(text: str):
    try:
        return parse_constraint(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def metric_arg(text: str) -> MetricId:
    try:
        return MetricId(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"must be one of recall|precision|fpr, got {text!r}"
        ) from None


def _load_dataset(path: str) -> Dataset:
    if path == "-":
        return parse_any(sys.stdin.read())
    return load_path(path)


def _fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.3f}"


def _fmt_threshold(threshold) -> str:
    return "ABOVE_MAX" if threshold is ABOVE_MAX else f"{threshold:g}"


def _point_line(point) -> str:
    c, m = point.counts, point.metrics
    return (
        f"threshold={_fmt_threshold(point.threshold)} "
        f"tp={c.tp} fp={c.fp} tn={c.tn} fn={c.fn} "
        f"precision={_fmt(m.precision)} recall={_fmt(m.recall)} fpr={_fmt(m.fpr)}"
    )


def _print_result(result) -> None:
    print(_point_line(result.point))


# -- subcommand handlers ------------------------------------------------------


def cmd_validate(args) -> int:
    dataset = _load_dataset(args.dataset)
    print(
        f"ok: {dataset.n_total} examples "
        f"({dataset.n_damaging} damaging, {dataset.n_good} good)"
    )
    return 0


def cmd_metrics(args) -> int:
    dataset = _load_dataset(args.dataset)
    curve = build_curve(dataset)
    print(_point_line(point_at(curve, args.threshold)))
    return 0


def _sweep_rows(curve: ThresholdCurve):
    for point in curve.points:
        yield {
            "threshold": None if point.threshold is ABOVE_MAX else point.threshold,
            **point.counts.as_dict(),
            **point.metrics.as_dict(),
        }


def cmd_sweep(args) -> int:
    dataset = _load_dataset(args.dataset)
    curve = build_curve(dataset)
    if args.format == "json":
        print(json.dumps(list(_sweep_rows(curve)), indent=2))
    elif args.format == "csv":
        fields = ["threshold", "tp", "fp", "tn", "fn", "recall", "precision", "fpr"]
        print(",".join(fields))
        for row in _sweep_rows(curve):
            print(",".join("" if row[f] is None else repr(row[f]) for f in fields))
    else:
        for point in curve.points:
            print(_point_line(point))
    return 0


def cmd_inverse(args) -> int:
    dataset = _load_dataset(args.dataset)
    curve = build_curve(dataset)
    result = inverse_for_metric(curve, args.metric, args.target)
    _print_result(result)
    return 0


def cmd_optimize(args) -> int:
    dataset = _load_dataset(args.dataset)
    curve = build_curve(dataset)
    result = optimize(curve, args.maximize, tuple(args.constraint))
    _print_result(result)
    return 0


_ANSI = {IconColor.BLUE: "\x1b[34m", IconColor.RED: "\x1b[31m"}
_GLYPH = {IconShape.CIRCLE: "o", IconShape.TRIANGLE: "^"}


def cmd_preview(args) -> int:
    dataset = _load_dataset(args.dataset)
    curve = build_curve(dataset)
    point = point_at(curve, args.threshold)
    grid = allocate_icons(point.counts, args.icons)
    entries = legend()
    print(_point_line(point))
    print(" ".join(f"{cat.value}={grid.allocation[cat]}" for cat in CATEGORY_ORDER))
    # Icon rows only make sense on a terminal; pipes get the counts above.
    if sys.stdout.isatty() or args.grid:
        use_color = sys.stdout.isatty() and not os.environ.get("NO_COLOR")
        glyphs = []
        for cat in CATEGORY_ORDER:
            entry = entries[cat]
            glyph = _GLYPH[entry.shape]
            if use_color:
                glyph = f"{_ANSI[entry.color]}{glyph}\x1b[0m"
            glyphs.extend([glyph] * grid.allocation[cat])
        per_row = max(1, args.columns)
        for start in range(0, len(glyphs), per_row):
            print("".join(glyphs[start : start + per_row]))
    for cat in CATEGORY_ORDER:
        entry = entries[cat]
        print(f"{cat.value}: {entry.color.value} {entry.shape.value}, {entry.caption}")
    return 0


def cmd_fetch(args) -> int:
    rev_ids = read_rev_ids(args.revids)
    labels = read_labels_csv(args.labels)
    request = ScoreRequest(
        base_url=args.base_url, context=args.context, model=args.model, rev_ids=rev_ids
    )
    scores = fetch_scores(request, offline_dir=args.offline_dir)
    dataset, skipped = build_dataset(scores, labels)
    for rev_id in skipped:
        outcome = scores.get(rev_id)
        reason = outcome.detail if hasattr(outcome, "detail") else "no label provided"
        print(f"skipped revision {rev_id}: {reason}", file=sys.stderr)
    with open(args.out, "w", encoding="utf-8") as handle:
        write_csv(dataset, handle)
    print(f"wrote {dataset.n_total} examples to {args.out}")
    return 0


def cmd_synth(args) -> int:
    config = SynthConfig(n_total=args.n, prevalence=args.prevalence, seed=args.seed)
    dataset = synthesize(config)
    with open(args.out, "w", encoding="utf-8") as handle:
        write_csv(dataset, handle)
    print(f"wrote {dataset.n_total} examples to {args.out}")
    return 0


def cmd_fixture(args) -> int:
    dataset = fixture_t04()
    if args.out == "-":
        write_csv(dataset, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            write_csv(dataset, handle)
        print(f"wrote {dataset.n_total} examples to {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .service import ServiceConfig, run

    config = ServiceConfig.from_env()
    if args.addr:
        config.addr = args.addr
    if args.static_dir:
        config.static_dir = args.static_dir
    if args.fixtures_dir:
        config.fixtures_dir = args.fixtures_dir
    if args.snapshot_dir:
        config.snapshot_dir = args.snapshot_dir
    run(config)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thresholdlab",
        description="Operating-point exploration for binary damage classifiers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def dataset_cmd(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("dataset", help="CSV/JSONL file of scored examples, or - for stdin")
        return p

    p = dataset_cmd("validate", "parse a dataset and report its size")
    p.set_defaults(handler=cmd_validate)

    p = dataset_cmd("metrics", "counts and metrics at one threshold")
    p.add_argument("--threshold", type=unit_float, required=True)
    p.set_defaults(handler=cmd_metrics)

    p = dataset_cmd("sweep", "every candidate operating point")
    p.add_argument("--format", choices=("human", "csv", "json"), default="human")
    p.set_defaults(handler=cmd_sweep)

    p = dataset_cmd("inverse", "threshold achieving a metric target")
    p.add_argument("--metric", type=metric_arg, required=True)
    p.add_argument("--target", type=unit_float, required=True)
    p.set_defaults(handler=cmd_inverse)

    p = dataset_cmd("optimize", "maximize a metric subject to constraints")
    p.add_argument("--maximize", type=metric_arg, required=True)
    p.add_argument(
        "--constraint",
        action="append",
        type=constraint_arg,
        default=[],
        metavar="METRIC{>=|<=}BOUND",
        help="repeatable, e.g. precision>=0.9",
    )
    p.set_defaults(handler=cmd_optimize)

    p = dataset_cmd("preview", "pictogram of outcomes at a threshold")
    p.add_argument("--threshold", type=unit_float, required=True)
    p.add_argument("--icons", type=int, default=100)
    p.add_argument("--columns", type=int, default=10, help="icons per printed row")
    p.add_argument("--grid", action="store_true", help="print icon rows even when piped")
    p.set_defaults(handler=cmd_preview)

    p = sub.add_parser("fetch", help="score revisions via a scoring service and join labels")
    p.add_argument("--revids", required=True, help="file with one revision id per line")
    p.add_argument("--labels", required=True, help="CSV with header id,label")
    p.add_argument("--base-url", default="https://ores.wikimedia.org")
    p.add_argument("--context", default="enwiki")
    p.add_argument("--model", default="damaging")
    p.add_argument("--offline-dir", help="serve scores from recorded fixture files instead")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_fetch)

    p = sub.add_parser("synth", help="generate a synthetic labeled dataset")
    p.add_argument("--n", type=int, default=1000, help="number of examples")
    p.add_argument("--prevalence", type=unit_float, default=0.03)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("fixture", help="write the built-in 1000-example dataset")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=cmd_fixture)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", help="host:port (default 127.0.0.1:8808)")
    p.add_argument("--static-dir", help="directory with a built UI bundle to serve at /")
    p.add_argument("--fixtures-dir", help="directory of datasets to preload")
    p.add_argument("--snapshot-dir", help="persist uploaded datasets here across restarts")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except UndefinedMetricError as exc:
        print(f"undefined: {exc}", file=sys.stderr)
        return 1
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # Downstream reader (e.g. head) closed the pipe: not our error.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
