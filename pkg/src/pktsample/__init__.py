"""pktsample: deterministic sampling and class-imbalance analysis for
protocol-labeled packet traces.

Build or ingest labeled packet-record datasets, draw random /
systematic / stratified / under-over samples behind one seeded,
bit-reproducible contract, and quantify what each sampling family does
to class balance and information loss (missing classes).
"""

__version__ = "0.1.0"

from pktsample.dataset import (
    ClassHistogram,
    PacketRecord,
    TraceDataset,
    histogram,
    load_dataset,
    load_histogram_spec,
    parse_histogram_spec,
    parse_records,
    pu_tds_histogram,
    synthesize,
)
from pktsample.metrics import (
    ClassRow,
    ImbalanceReport,
    MissProbabilityTable,
    class_report,
    expected_missing_series,
    identity_report,
    miss_probability_analytic,
    sample_size_percent,
    sampling_interval,
    selection_probability,
    stratified_totals,
)
from pktsample.report import (
    ComparisonMatrix,
    missing_series_export,
    render_sample_csv,
    render_table,
)
from pktsample.samplers import (
    SampleResult,
    SampleSpec,
    SampledRecord,
    draw,
    random_sample,
    stratified_sample,
    systematic_by_count,
    systematic_sample,
    under_over_sample,
)

__all__ = [
    "ClassHistogram",
    "ClassRow",
    "ComparisonMatrix",
    "ImbalanceReport",
    "MissProbabilityTable",
    "PacketRecord",
    "SampleResult",
    "SampleSpec",
    "SampledRecord",
    "TraceDataset",
    "__version__",
    "class_report",
    "draw",
    "expected_missing_series",
    "histogram",
    "identity_report",
    "load_dataset",
    "load_histogram_spec",
    "miss_probability_analytic",
    "missing_series_export",
    "parse_histogram_spec",
    "parse_records",
    "pu_tds_histogram",
    "random_sample",
    "render_sample_csv",
    "render_table",
    "sample_size_percent",
    "sampling_interval",
    "selection_probability",
    "stratified_sample",
    "stratified_totals",
    "synthesize",
    "systematic_by_count",
    "systematic_sample",
    "under_over_sample",
]
