"""Exact sampling and linear cross-entropy benchmarking for product-form
distributions over d**n outcomes."""

from .bench import (
    SECONDS_PER_YEAR,
    AdvantageReport,
    TimingRecord,
    advantage_ratio,
    extrapolate_enum_time,
    time_enumeration,
    time_sampling,
)
from .distribution import (
    DigitString,
    WeightTable,
    conditional_pmf,
    digits_to_index,
    generate_weight_table,
    index_to_digits,
    load_weight_table,
    normalize_pmf,
    table_from_json,
    table_to_json,
)
from .oracle import (
    DEFAULT_ENUM_CAP,
    DensePmf,
    ResourceLimitError,
    empirical_histogram,
    enumerate_pmf,
    pmf_to_csv,
    total_variation,
)
from .sampler import (
    SampleBatch,
    batch_to_csv,
    draw_batch,
    draw_sample,
    log_prob,
    log_prob_batch,
    make_batch,
)
from .xeb import (
    CSV_HEADER,
    MODES,
    XebEstimate,
    closed_form_factors,
    empirical_xeb,
    estimate_to_csv_row,
    estimates_to_csv,
    true_xeb_bruteforce,
    true_xeb_closed_form,
)

__version__ = "0.1.0"

__all__ = [
    "AdvantageReport",
    "CSV_HEADER",
    "DEFAULT_ENUM_CAP",
    "DensePmf",
    "DigitString",
    "MODES",
    "ResourceLimitError",
    "SampleBatch",
    "SECONDS_PER_YEAR",
    "TimingRecord",
    "WeightTable",
    "XebEstimate",
    "advantage_ratio",
    "batch_to_csv",
    "closed_form_factors",
    "conditional_pmf",
    "digits_to_index",
    "draw_batch",
    "draw_sample",
    "empirical_histogram",
    "empirical_xeb",
    "enumerate_pmf",
    "estimate_to_csv_row",
    "estimates_to_csv",
    "extrapolate_enum_time",
    "generate_weight_table",
    "index_to_digits",
    "load_weight_table",
    "log_prob",
    "log_prob_batch",
    "make_batch",
    "normalize_pmf",
    "pmf_to_csv",
    "table_from_json",
    "table_to_json",
    "time_enumeration",
    "time_sampling",
    "total_variation",
    "true_xeb_bruteforce",
    "true_xeb_closed_form",
]
