"""PNG figure rendering for xebench CSV files.

Consumes the delimited outputs of the xebench CLI (estimate CSVs and dense
pmf CSVs) and renders them to static images. This package never imports
xebench; the CSV schemas are the only coupling.
"""

from .loader import ESTIMATE_COLUMNS, PMF_COLUMNS, EstimateRow, SchemaError, load_estimates, load_pmf
from .render import render_big_xeb, render_pmf_pair, render_xeb_vs_n

__version__ = "0.1.0"

__all__ = [
    "ESTIMATE_COLUMNS",
    "EstimateRow",
    "PMF_COLUMNS",
    "SchemaError",
    "load_estimates",
    "load_pmf",
    "render_big_xeb",
    "render_pmf_pair",
    "render_xeb_vs_n",
]
