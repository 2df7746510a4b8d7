"""Labeled packet-record datasets: ingestion, histograms, synthesis.

A dataset is an ordered sequence of protocol-labeled records.  Labels
are opaque strings compared exactly (case-sensitively) after whitespace
trimming; everything else a row carries is kept as passthrough
attributes.  The reference ingestion schema is a Wireshark-style CSV
export (``No., Time, Source, Destination, Protocol, Length, Info``)
with the label in the ``Protocol`` column.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO

from pktsample import kernels
from pktsample.errors import (
    EmptyDataset,
    EmptyLabel,
    HistogramSpecError,
    MalformedRow,
    MissingLabelColumn,
    ZeroTotal,
)

DEFAULT_LABEL_COLUMN = "Protocol"


@dataclass(frozen=True, slots=True)
class PacketRecord:
    """One labeled traffic record.

    ``position`` is the 1-based ordinal within its dataset; ``attributes``
    are opaque key/value string pairs carried through from ingestion.
    """

    position: int
    label: str
    attributes: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class TraceDataset:
    """Ordered, immutable sequence of records; the population being sampled."""

    records: tuple[PacketRecord, ...]

    def __post_init__(self):
        for i, record in enumerate(self.records, start=1):
            if record.position != i:
                raise ValueError(
                    f"record positions must be contiguous 1..P; "
                    f"found {record.position} at index {i - 1}"
                )
            if not record.label:
                raise ValueError(f"record at position {i} has an empty label")

    @property
    def population(self) -> int:
        return len(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class ClassHistogram:
    """Per-label instance counts, ordered by first appearance."""

    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for label, count in self.entries:
            if not label or label != label.strip():
                raise ValueError(f"bad histogram label {label!r}")
            if count < 1:
                raise ValueError(f"class {label!r} has non-positive count {count}")
            if label in seen:
                raise ValueError(f"duplicate class {label!r}")
            seen.add(label)

    @property
    def class_count(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(count for _, count in self.entries)

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    def counts(self) -> tuple[int, ...]:
        return tuple(count for _, count in self.entries)

    def as_dict(self) -> dict[str, int]:
        return dict(self.entries)

    @classmethod
    def from_counts(cls, items: Iterable[tuple[str, int]]) -> "ClassHistogram":
        return cls(entries=tuple((label, int(count)) for label, count in items))


def histogram(dataset: TraceDataset) -> ClassHistogram:
    """Count records per label, ordered by first appearance."""
    if dataset.population == 0:
        raise EmptyDataset("cannot build a histogram of an empty dataset")
    counts: dict[str, int] = {}
    for record in dataset.records:
        counts[record.label] = counts.get(record.label, 0) + 1
    return ClassHistogram.from_counts(counts.items())


def _stringify(value: object) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, separators=(",", ":"), ensure_ascii=False)


def _parse_csv(text: IO[str], label_column: str) -> TraceDataset:
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDataset("input has no header row") from None
    if label_column not in header:
        raise MissingLabelColumn(
            f"header {header!r} lacks label column {label_column!r}"
        )
    label_index = header.index(label_column)
    records = []
    row_number = 0
    for row in reader:
        if not row:
            continue
        row_number += 1
        if len(row) != len(header):
            raise MalformedRow(
                f"row {row_number} (line {reader.line_num}): expected "
                f"{len(header)} columns, got {len(row)}"
            )
        label = row[label_index].strip()
        if not label:
            raise EmptyLabel(
                f"row {row_number} (line {reader.line_num}): blank label"
            )
        attributes = tuple(
            (header[i], row[i]) for i in range(len(header)) if i != label_index
        )
        records.append(
            PacketRecord(position=len(records) + 1, label=label, attributes=attributes)
        )
    if not records:
        raise EmptyDataset("input has no data rows")
    return TraceDataset(records=tuple(records))


def _parse_ndjson(text: IO[str], label_column: str) -> TraceDataset:
    records = []
    for line_num, line in enumerate(text, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRow(f"line {line_num}: invalid JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise MalformedRow(f"line {line_num}: expected a JSON object")
        if label_column not in obj:
            raise MissingLabelColumn(
                f"line {line_num}: object lacks label column {label_column!r}"
            )
        label = _stringify(obj[label_column]).strip()
        if not label:
            raise EmptyLabel(f"line {line_num}: blank label")
        attributes = tuple(
            (key, _stringify(value))
            for key, value in obj.items()
            if key != label_column
        )
        records.append(
            PacketRecord(position=len(records) + 1, label=label, attributes=attributes)
        )
    if not records:
        raise EmptyDataset("input has no data rows")
    return TraceDataset(records=tuple(records))


def parse_records(
    stream: IO[bytes] | IO[str],
    format: str = "csv",
    label_column: str = DEFAULT_LABEL_COLUMN,
) -> TraceDataset:
    """Parse a UTF-8 byte (or text) stream of labeled records.

    ``format`` is ``csv`` (header row required) or ``ndjson`` (one object
    per line).  Row order is preserved: record k corresponds to data row k.
    """
    text: IO[str]
    if isinstance(stream, io.TextIOBase):
        text = stream
    else:
        text = io.TextIOWrapper(stream, encoding="utf-8", newline="")
    if format == "csv":
        return _parse_csv(text, label_column)
    if format == "ndjson":
        return _parse_ndjson(text, label_column)
    raise ValueError(f"unknown format {format!r} (use 'csv' or 'ndjson')")


def load_dataset(
    path: str | Path,
    format: str | None = None,
    label_column: str = DEFAULT_LABEL_COLUMN,
) -> TraceDataset:
    """Parse a dataset file; format inferred from the extension by default."""
    path = Path(path)
    if format is None:
        format = "ndjson" if path.suffix.lower() in (".ndjson", ".jsonl") else "csv"
    with open(path, "rb") as stream:
        return parse_records(stream, format=format, label_column=label_column)


def synthesize(
    spec: ClassHistogram,
    seed: int = 0,
    arrangement: str = "shuffled",
) -> TraceDataset:
    """Generate a dataset with exactly the spec's per-class counts.

    ``grouped`` emits classes contiguously in histogram order;
    ``shuffled`` applies one seeded Fisher-Yates permutation to the
    grouped sequence.  Output is byte-stable for equal inputs.
    """
    if spec.total < 1:
        raise ZeroTotal("histogram spec has zero total")
    if arrangement not in ("shuffled", "grouped"):
        raise ValueError(f"unknown arrangement {arrangement!r}")
    labels = []
    for label, count in spec.entries:
        labels.extend([label] * count)
    if arrangement == "shuffled":
        order = kernels.permutation(len(labels), seed)
        labels = [labels[i] for i in order]
    records = tuple(
        PacketRecord(position=i, label=label)
        for i, label in enumerate(labels, start=1)
    )
    return TraceDataset(records=records)


def parse_histogram_spec(text: str) -> ClassHistogram:
    """Parse ``label,count`` lines; ``#`` starts a comment, blanks ignored."""
    entries = []
    seen = set()
    for line_num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label_part, _, count_part = line.rpartition(",")
        label = label_part.strip()
        if not label:
            raise HistogramSpecError(f"line {line_num}: missing label")
        try:
            count = int(count_part.strip())
        except ValueError:
            raise HistogramSpecError(
                f"line {line_num}: bad count {count_part.strip()!r}"
            ) from None
        if count < 1:
            raise HistogramSpecError(f"line {line_num}: count must be >= 1")
        if label in seen:
            raise HistogramSpecError(f"line {line_num}: duplicate label {label!r}")
        seen.add(label)
        entries.append((label, count))
    if not entries:
        raise HistogramSpecError("histogram spec has no entries")
    return ClassHistogram.from_counts(entries)


def load_histogram_spec(path: str | Path) -> ClassHistogram:
    return parse_histogram_spec(Path(path).read_text(encoding="utf-8"))


def pu_tds_histogram() -> ClassHistogram:
    """The bundled PU-TDS histogram: 30000 packets over 25 protocols."""
    text = resources.files("pktsample").joinpath("data/pu_tds.hist").read_text("utf-8")
    return parse_histogram_spec(text)
