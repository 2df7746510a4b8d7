"""Rendering: markdown tables, CSV, and a versioned JSON envelope.

Display rounding is half-up at a configurable number of decimals
(default 3); probability columns get two extra places so the default
report shows 5-decimal probabilities.  JSON output always carries full
precision.  All text output uses LF line endings and RFC-4180-style
quoting so byte-identical golden files hold on every platform.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources

from pktsample.dataset import TraceDataset
from pktsample.errors import EmptySeries, NonMonotonicAxis
from pktsample.metrics import ImbalanceReport
from pktsample.samplers import SampleResult, SampleSpec

SCHEMA_VERSION = "1.0"


def format_decimal(value: float, decimals: int) -> str:
    """Fixed-point half-up rounding of a float's shortest decimal form."""
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def round_half_up(value: float, decimals: int) -> float:
    return float(format_decimal(value, decimals))


@dataclass(frozen=True, slots=True)
class MatrixColumn:
    """One sampler run in a comparison: descriptor plus per-class shares."""

    title: str
    family: str
    parameter: str
    seed: int | None
    sampled_total: int
    missing_count: int
    percents: tuple[float, ...]


@dataclass(frozen=True)
class ComparisonMatrix:
    """Per-class sampled-percent matrix across several sampler runs."""

    row_labels: tuple[str, ...]
    source_counts: tuple[int, ...]
    source_population: int
    columns: tuple[MatrixColumn, ...]

    def __post_init__(self):
        if not self.columns:
            raise ValueError("a comparison needs at least one run")
        if len(self.source_counts) != len(self.row_labels):
            raise ValueError("source_counts must align with row_labels")
        for column in self.columns:
            if len(column.percents) != len(self.row_labels):
                raise ValueError(f"column {column.title!r} row count mismatch")
            if column.sampled_total > 0:
                total = sum(column.percents)
                if abs(total - 100.0) > 0.01:
                    raise ValueError(
                        f"column {column.title!r} percents sum to {total}, not 100"
                    )

    @classmethod
    def from_reports(cls, reports: list[ImbalanceReport]) -> "ComparisonMatrix":
        if not reports:
            raise ValueError("a comparison needs at least one run")
        first = reports[0]
        labels = tuple(row.label for row in first.per_class)
        counts = tuple(row.source_count for row in first.per_class)
        columns = []
        for report in reports:
            if tuple(row.label for row in report.per_class) != labels:
                raise ValueError("all runs must share the same source classes")
            columns.append(
                MatrixColumn(
                    title=_column_title(report.spec, report.total_sampled),
                    family=report.spec.family if report.spec else "identity",
                    parameter=_parameter_string(report.spec),
                    seed=_spec_seed(report.spec),
                    sampled_total=report.total_sampled,
                    missing_count=report.missing_count,
                    percents=tuple(row.sampled_percent for row in report.per_class),
                )
            )
        return cls(
            row_labels=labels,
            source_counts=counts,
            source_population=first.source_population,
            columns=tuple(columns),
        )


def _parameter_string(spec: SampleSpec | None) -> str:
    if spec is None:
        return "identity"
    if spec.family in ("systematic", "stratified"):
        return f"I={spec.interval}"
    if spec.family == "underover":
        return f"k={spec.k}"
    return f"n={spec.n}"


def _spec_seed(spec: SampleSpec | None) -> int | None:
    if spec is None or spec.family in ("systematic", "bycount", "stratified"):
        return None
    return spec.seed


def _column_title(spec: SampleSpec | None, total: int) -> str:
    if spec is None:
        return f"identity, n={total}"
    if spec.family == "random":
        tag = "random wr" if spec.with_replacement else "random"
        return f"{tag} seed={spec.seed}, n={total}"
    if spec.family == "underover":
        return f"underover k={spec.k} seed={spec.seed}, n={total}"
    return f"{_run_label(spec)}, n={total}"


def _run_label(spec: SampleSpec) -> str:
    if spec.family == "systematic":
        return f"systematic I={spec.interval}"
    if spec.family == "stratified":
        return f"stratified I={spec.interval}"
    return "bycount"


def _spec_json(spec: SampleSpec | None) -> dict | None:
    if spec is None:
        return None
    body: dict[str, object] = {"family": spec.family}
    if spec.n is not None:
        body["n"] = spec.n
    if spec.interval is not None:
        body["interval"] = spec.interval
    if spec.k is not None:
        body["k"] = spec.k
    if spec.family == "random":
        body["with_replacement"] = spec.with_replacement
    if spec.family in ("random", "underover"):
        body["seed"] = spec.seed
    return body


def _run_line(spec: SampleSpec | None) -> str:
    return spec.describe() if spec is not None else "identity (full dataset)"


def _report_markdown(report: ImbalanceReport, decimals: int) -> str:
    prob_decimals = decimals + 2
    missing = ", ".join(report.missing_classes) if report.missing_classes else "none"
    lines = [
        "# Imbalance report",
        "",
        f"- run: {_run_line(report.spec)}",
        f"- sampled: {report.total_sampled} of {report.source_population} "
        f"({format_decimal(report.size_percent, decimals)}% of source)",
        f"- imbalance ratio: {format_decimal(report.imbalance_ratio, decimals)}",
        f"- missing classes ({report.missing_count}): {missing}",
        "",
        "| Protocol | Source Count | Sampled Count | Sampled % | P(s) |",
        "| --- | ---: | ---: | ---: | ---: |",
    ]
    for row in report.per_class:
        lines.append(
            f"| {row.label} | {row.source_count} | {row.sampled_count} "
            f"| {format_decimal(row.sampled_percent, decimals)} "
            f"| {format_decimal(row.selection_probability, prob_decimals)} |"
        )
    return "\n".join(lines) + "\n"


def _report_csv(report: ImbalanceReport, decimals: int) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["label", "source_count", "sampled_count", "sampled_percent",
         "selection_probability"]
    )
    for row in report.per_class:
        writer.writerow(
            [
                row.label,
                row.source_count,
                row.sampled_count,
                format_decimal(row.sampled_percent, decimals),
                format_decimal(row.selection_probability, decimals + 2),
            ]
        )
    return out.getvalue()


def _source_json(report: ImbalanceReport) -> dict:
    return {
        "population": report.source_population,
        "classes": [
            {"label": row.label, "count": row.source_count}
            for row in report.per_class
        ],
    }


def _report_json(report: ImbalanceReport) -> str:
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "kind": "imbalance_report",
        "source": _source_json(report),
        "spec": _spec_json(report.spec),
        "per_class": [
            {
                "label": row.label,
                "source_count": row.source_count,
                "sampled_count": row.sampled_count,
                "sampled_percent": row.sampled_percent,
                "selection_probability": row.selection_probability,
            }
            for row in report.per_class
        ],
        "totals": {
            "sampled": report.total_sampled,
            "size_percent": report.size_percent,
            "imbalance_ratio": report.imbalance_ratio,
            "missing_count": report.missing_count,
        },
        "missing": list(report.missing_classes),
    }
    return json.dumps(envelope, indent=2) + "\n"


def _matrix_markdown(matrix: ComparisonMatrix, decimals: int) -> str:
    lines = [
        "# Sampler comparison",
        "",
        f"Source: {matrix.source_population} packets, "
        f"{len(matrix.row_labels)} classes. Cells are per-class sampled %.",
        "",
        "| Protocol | " + " | ".join(c.title for c in matrix.columns) + " |",
        "| --- |" + " ---: |" * len(matrix.columns),
    ]
    for r, label in enumerate(matrix.row_labels):
        cells = " | ".join(
            format_decimal(c.percents[r], decimals) for c in matrix.columns
        )
        lines.append(f"| {label} | {cells} |")
    lines.append(
        "| missing classes | "
        + " | ".join(str(c.missing_count) for c in matrix.columns)
        + " |"
    )
    return "\n".join(lines) + "\n"


def _matrix_csv(matrix: ComparisonMatrix, decimals: int) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["protocol"] + [c.title for c in matrix.columns])
    for r, label in enumerate(matrix.row_labels):
        writer.writerow(
            [label]
            + [format_decimal(c.percents[r], decimals) for c in matrix.columns]
        )
    writer.writerow(
        ["missing_classes"] + [str(c.missing_count) for c in matrix.columns]
    )
    return out.getvalue()


def _matrix_json(matrix: ComparisonMatrix) -> str:
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "kind": "comparison",
        "source": {
            "population": matrix.source_population,
            "classes": [
                {"label": label, "count": count}
                for label, count in zip(matrix.row_labels, matrix.source_counts)
            ],
        },
        "rows": list(matrix.row_labels),
        "columns": [
            {
                "title": c.title,
                "family": c.family,
                "parameter": c.parameter,
                "seed": c.seed,
                "sampled_total": c.sampled_total,
                "missing_count": c.missing_count,
            }
            for c in matrix.columns
        ],
        "cells": [list(c.percents) for c in matrix.columns],
    }
    return json.dumps(envelope, indent=2) + "\n"


def render_table(
    table: ImbalanceReport | ComparisonMatrix,
    format: str = "markdown",
    decimals: int | None = None,
) -> str:
    """Render a report or comparison; deterministic bytes for equal input."""
    if isinstance(table, ImbalanceReport):
        decimals = table.display_decimals if decimals is None else decimals
        if format == "markdown":
            return _report_markdown(table, decimals)
        if format == "csv":
            return _report_csv(table, decimals)
        if format == "json":
            return _report_json(table)
    elif isinstance(table, ComparisonMatrix):
        decimals = 3 if decimals is None else decimals
        if format == "markdown":
            return _matrix_markdown(table, decimals)
        if format == "csv":
            return _matrix_csv(table, decimals)
        if format == "json":
            return _matrix_json(table)
    else:
        raise TypeError(f"cannot render {type(table).__name__}")
    raise ValueError(f"unknown format {format!r} (use markdown, csv or json)")


def _series_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def missing_series_export(
    series: list[tuple[int, float | int | None, float | None]],
) -> str:
    """Missing-class series as CSV: x, observed, expected (blank if n/a)."""
    if not series:
        raise EmptySeries("series must contain at least one point")
    xs = [point[0] for point in series]
    for left, right in zip(xs, xs[1:]):
        if right <= left:
            raise NonMonotonicAxis(f"x-values must strictly increase ({left} !< {right})")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "observed_missing", "expected_missing"])
    for x, observed, expected in series:
        writer.writerow([x, _series_cell(observed), _series_cell(expected)])
    return out.getvalue()


def render_sample_csv(result: SampleResult) -> str:
    """Sample entries as CSV (source_position, label, synthetic)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["source_position", "label", "synthetic"])
    for entry in result.entries:
        writer.writerow(
            [entry.source_position, entry.label, "true" if entry.synthetic else "false"]
        )
    return out.getvalue()


def dataset_to_csv(dataset: TraceDataset) -> str:
    """Dataset as CSV with a No. column, the Protocol label, and attributes.

    All records must share one attribute-key layout.  An original "No."
    attribute (from a parsed capture export) is kept verbatim; otherwise
    the record position is written.
    """
    attr_keys: tuple[str, ...] = ()
    if dataset.records:
        attr_keys = tuple(key for key, _ in dataset.records[0].attributes)
        for record in dataset.records:
            if tuple(key for key, _ in record.attributes) != attr_keys:
                raise ValueError("records carry differing attribute layouts")
    extra = [key for key in attr_keys if key not in ("No.", "Protocol")]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["No.", "Protocol"] + extra)
    for record in dataset.records:
        attrs = dict(record.attributes)
        number = attrs.get("No.", record.position)
        writer.writerow([number, record.label] + [attrs[key] for key in extra])
    return out.getvalue()


def report_schema() -> dict:
    """The shipped JSON schema for report/comparison envelopes."""
    text = (
        resources.files("pktsample")
        .joinpath("data/report_schema.json")
        .read_text("utf-8")
    )
    return json.loads(text)
