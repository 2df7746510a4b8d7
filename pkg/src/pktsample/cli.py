"""Command-line interface.

Workflow commands: ``synth`` (histogram spec -> dataset), ``analyze``
(dataset -> identity report), ``sample`` (dataset -> sample + report),
``compare`` (dataset + run matrix -> comparison table), ``oracle``
(dataset -> missing-class series, observed vs analytic).

Exit codes: 0 success, 1 runtime/data error, 2 usage/config error.
Every randomized command takes ``--seed`` (default 0) and is
bit-reproducible for equal invocations; no command mutates its input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pktsample import __version__, kernels
from pktsample.dataset import (
    DEFAULT_LABEL_COLUMN,
    histogram,
    load_dataset,
    load_histogram_spec,
    synthesize,
)
from pktsample.errors import HistogramSpecError, PktSampleError
from pktsample.metrics import (
    class_report,
    expected_missing_series,
    identity_report,
    mc_missing_class_counts,
)
from pktsample.report import (
    ComparisonMatrix,
    dataset_to_csv,
    missing_series_export,
    render_sample_csv,
    render_table,
)
from pktsample.samplers import FAMILIES, SampleSpec, draw


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _error(message: str) -> None:
    print(f"pktsample: error: {message}", file=sys.stderr)


def _load_input(args):
    dataset = load_dataset(
        args.input, format=args.input_format, label_column=args.label_column
    )
    return dataset, histogram(dataset)


def _spec_from_flags(args) -> SampleSpec:
    family = args.family
    if family == "random":
        if args.n is None:
            raise ValueError("--family random needs --n")
        return SampleSpec.random(
            args.n, with_replacement=args.with_replacement, seed=args.seed
        )
    if args.with_replacement:
        raise ValueError("--with-replacement applies to --family random only")
    if family == "systematic":
        if args.interval is None:
            raise ValueError("--family systematic needs --interval")
        return SampleSpec.systematic(args.interval)
    if family == "bycount":
        if args.n is None:
            raise ValueError("--family bycount needs --n")
        return SampleSpec.by_count(args.n)
    if family == "stratified":
        if args.interval is None:
            raise ValueError("--family stratified needs --interval")
        return SampleSpec.stratified(args.interval)
    if args.k is None:
        raise ValueError("--family underover needs --k")
    return SampleSpec.under_over(args.k, seed=args.seed)


def parse_run_matrix(text: str, default_seed: int) -> list[SampleSpec]:
    """Parse a declarative run list: one ``family key=value ...`` per line.

    Keys: n, interval, k, seed (integers) and with_replacement
    (true/false).  ``#`` starts a comment.  Runs without an explicit
    seed inherit ``default_seed``.
    """
    specs = []
    for line_num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        family = tokens[0]
        if family not in FAMILIES:
            raise ValueError(f"runs line {line_num}: unknown family {family!r}")
        values: dict[str, object] = {}
        if family in ("random", "underover"):
            values["seed"] = default_seed
        for token in tokens[1:]:
            key, sep, value = token.partition("=")
            if not sep:
                raise ValueError(
                    f"runs line {line_num}: expected key=value, got {token!r}"
                )
            if key in ("n", "interval", "k", "seed"):
                try:
                    values[key] = int(value)
                except ValueError:
                    raise ValueError(
                        f"runs line {line_num}: {key} must be an integer"
                    ) from None
            elif key == "with_replacement":
                if value not in ("true", "false"):
                    raise ValueError(
                        f"runs line {line_num}: with_replacement must be true/false"
                    )
                values[key] = value == "true"
            else:
                raise ValueError(f"runs line {line_num}: unknown key {key!r}")
        try:
            specs.append(SampleSpec(family=family, **values))  # type: ignore[arg-type]
        except ValueError as exc:
            raise ValueError(f"runs line {line_num}: {exc}") from None
    if not specs:
        raise ValueError("runs file contains no runs")
    return specs


def cmd_synth(args) -> int:
    try:
        spec = load_histogram_spec(args.histogram)
    except FileNotFoundError:
        _error(f"histogram spec not found: {args.histogram}")
        return 2
    dataset = synthesize(spec, seed=args.seed, arrangement=args.arrangement)
    _write_text(args.out, dataset_to_csv(dataset))
    print(
        f"population={dataset.population} classes={spec.class_count} "
        f"seed={args.seed} arrangement={args.arrangement}",
        file=sys.stderr,
    )
    return 0


def cmd_analyze(args) -> int:
    _, hist = _load_input(args)
    report = identity_report(hist, display_decimals=args.decimals)
    _write_text(args.out, render_table(report, format=args.format))
    return 0


def cmd_sample(args) -> int:
    try:
        spec = _spec_from_flags(args)
    except ValueError as exc:
        _error(str(exc))
        return 2
    dataset, hist = _load_input(args)
    result = draw(dataset, spec)
    _write_text(args.out, render_sample_csv(result))
    report = class_report(hist, result, display_decimals=args.decimals)
    rendered = render_table(report, format=args.format)
    if args.report is not None:
        _write_text(args.report, rendered)
    elif args.out != "-":
        sys.stdout.write(rendered)
    return 0


def cmd_compare(args) -> int:
    try:
        runs_text = Path(args.runs).read_text(encoding="utf-8")
        specs = parse_run_matrix(runs_text, default_seed=args.seed)
    except FileNotFoundError:
        _error(f"runs file not found: {args.runs}")
        return 2
    except ValueError as exc:
        _error(str(exc))
        return 2
    dataset, hist = _load_input(args)
    reports = [
        class_report(hist, draw(dataset, spec), display_decimals=args.decimals)
        for spec in specs
    ]
    matrix = ComparisonMatrix.from_reports(reports)
    _write_text(args.out, render_table(matrix, format=args.format, decimals=args.decimals))
    return 0


def cmd_oracle(args) -> int:
    try:
        n_values = [int(part) for part in args.n.split(",") if part.strip()]
    except ValueError:
        _error(f"--n must be a comma-separated list of integers: {args.n!r}")
        return 2
    if not n_values or any(n < 1 for n in n_values):
        _error("--n values must be >= 1")
        return 2
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        _error("--n values must be strictly increasing")
        return 2
    dataset, hist = _load_input(args)
    if not args.with_replacement and max(n_values) > dataset.population:
        _error(
            f"--n values must not exceed the population "
            f"({dataset.population}) without replacement"
        )
        return 2
    series = []
    for index, n in enumerate(n_values):
        trial_counts = mc_missing_class_counts(
            hist,
            n,
            trials=args.trials,
            seed=kernels.derive_seed(args.seed, index),
            with_replacement=args.with_replacement,
        )
        observed: float | int
        if args.trials == 1:
            observed = trial_counts[0]
        else:
            observed = sum(trial_counts) / len(trial_counts)
        series.append((n, observed, None))
    expected = expected_missing_series(hist, n_values, args.with_replacement)
    series = [
        (n, observed, value)
        for (n, observed, _), (_, value) in zip(series, expected)
    ]
    _write_text(args.out, missing_series_export(series))
    return 0


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="dataset file (csv or ndjson)")
    parser.add_argument(
        "--input-format",
        choices=("csv", "ndjson"),
        default=None,
        help="override the format inferred from the file extension",
    )
    parser.add_argument(
        "--label-column",
        default=DEFAULT_LABEL_COLUMN,
        help=f"column holding the protocol label (default {DEFAULT_LABEL_COLUMN})",
    )


def _add_render_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("markdown", "csv", "json"),
        default="markdown",
        help="report rendering (default markdown)",
    )
    parser.add_argument(
        "--decimals", type=int, default=3, help="display decimals (default 3)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pktsample",
        description="Deterministic sampling and imbalance analysis for "
        "protocol-labeled packet traces.",
    )
    parser.add_argument(
        "--version", action="version", version=f"pktsample {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize a dataset from a histogram spec")
    synth.add_argument("--histogram", required=True, help="histogram spec file")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument(
        "--arrangement", choices=("shuffled", "grouped"), default="shuffled"
    )
    synth.add_argument("--out", default="-", help="output CSV path (default stdout)")
    synth.set_defaults(func=cmd_synth)

    analyze = sub.add_parser("analyze", help="per-class report of a dataset")
    _add_input_args(analyze)
    _add_render_args(analyze)
    analyze.add_argument("--out", default="-")
    analyze.set_defaults(func=cmd_analyze)

    sample = sub.add_parser("sample", help="draw one sample and report on it")
    _add_input_args(sample)
    sample.add_argument("--family", required=True, choices=FAMILIES)
    sample.add_argument("--n", type=int, default=None)
    sample.add_argument("--interval", type=int, default=None)
    sample.add_argument("--k", type=int, default=None)
    sample.add_argument("--with-replacement", action="store_true")
    sample.add_argument("--seed", type=int, default=0)
    _add_render_args(sample)
    sample.add_argument("--out", default="-", help="sample CSV path (default stdout)")
    sample.add_argument(
        "--report",
        default=None,
        help="report path (default: stdout when --out is a file)",
    )
    sample.set_defaults(func=cmd_sample)

    compare = sub.add_parser("compare", help="run a matrix of samplers side by side")
    _add_input_args(compare)
    compare.add_argument("--runs", required=True, help="run matrix file")
    compare.add_argument(
        "--seed", type=int, default=0, help="seed for runs without an explicit one"
    )
    _add_render_args(compare)
    compare.add_argument("--out", default="-")
    compare.set_defaults(func=cmd_compare)

    oracle = sub.add_parser(
        "oracle", help="observed vs expected missing classes for random sampling"
    )
    _add_input_args(oracle)
    oracle.add_argument(
        "--n", required=True, help="comma-separated sample sizes, e.g. 500,1000"
    )
    oracle.add_argument("--with-replacement", action="store_true")
    oracle.add_argument(
        "--trials",
        type=int,
        default=1,
        help="observed runs per point; >1 reports the mean (default 1)",
    )
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--out", default="-")
    oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HistogramSpecError as exc:
        _error(str(exc))
        return 2
    except PktSampleError as exc:
        _error(str(exc))
        return 1
    except OSError as exc:
        _error(str(exc))
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
