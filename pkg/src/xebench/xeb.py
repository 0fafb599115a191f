"""True and exact-empirical linear cross-entropy benchmark (XEB) values.

The XEB of a sample set is N * mean(p(x_m)) - 1 with N = d**n; the true XEB
replaces the sample mean by the self-overlap sum_x p(x)**2. Log-space forms
track ln(XEB + 1), which stays finite long after N overflows doubles. The
naive empirical mode materializes N as a double on purpose, so its value
goes infinite exactly where that overflow happens (d = 2: finite at
n = 1023, inf from n = 1024 on).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distribution import WeightTable
from .oracle import DEFAULT_ENUM_CAP, enumerate_pmf
from .sampler import SampleBatch

MODES = (
    "empirical_naive",
    "empirical_logspace",
    "true_bruteforce",
    "true_closedform",
)

CSV_HEADER = "n,d,M,mode,value,log1p_value,stderr,seed"


@dataclass(frozen=True)
class XebEstimate:
    """One XEB value with its log-space form and sampling metadata."""

    n: int
    d: int
    mode: str
    value: float
    log1p_value: float
    M: int | None = None
    stderr: float | None = None
    seed: int | None = None


def _logsumexp(values: np.ndarray) -> float:
    shift = float(np.max(values))
    if not math.isfinite(shift):
        return shift
    return shift + math.log(float(np.exp(values - shift).sum()))


def _log_safe_stderr(log_probs: np.ndarray, log_n_outcomes: float, M: int) -> float | None:
    """Standard error of the M values N*p(x_m), without materializing N*p.

    Returns None when M < 2 or when the result itself overflows doubles.
    """
    if M < 2:
        return None
    scaled = log_probs + log_n_outcomes
    shift = float(np.max(scaled))
    if shift == -math.inf:
        return 0.0
    y = np.exp(scaled - shift)
    sd = float(y.std(ddof=1))
    if sd == 0.0:
        return 0.0
    with np.errstate(over="ignore"):
        stderr = float(np.exp(np.float64(shift + math.log(sd) - 0.5 * math.log(M))))
    return stderr if math.isfinite(stderr) else None


def empirical_xeb(table: WeightTable, batch: SampleBatch, mode: str) -> XebEstimate:
    """XEB of a batch's exact probabilities, in naive or log-space arithmetic.

    Both modes share log1p_value = n ln d - ln M + logsumexp(log_probs).
    The naive mode computes value = N * (sum_m p(x_m) / M) - 1 with
    N = d**n held in a double; the log-space mode computes
    value = expm1(log1p_value).
    """
    if mode not in ("empirical_naive", "empirical_logspace"):
        raise ValueError(f"unknown empirical mode {mode!r}")
    if (batch.n, batch.d) != (table.n, table.d):
        raise ValueError(
            f"batch is for (n={batch.n}, d={batch.d}), "
            f"table is (n={table.n}, d={table.d})"
        )
    log_probs = batch.log_probs
    M = batch.M
    log_n_outcomes = table.n * math.log(table.d)
    log1p_value = log_n_outcomes - math.log(M) + _logsumexp(log_probs)
    if mode == "empirical_naive":
        with np.errstate(over="ignore", invalid="ignore"):
            n_outcomes = np.float64(table.d) ** np.float64(table.n)
            value = float(n_outcomes * (np.exp(log_probs).sum() / M) - 1.0)
    else:
        with np.errstate(over="ignore"):
            value = float(np.expm1(np.float64(log1p_value)))
    return XebEstimate(
        n=table.n,
        d=table.d,
        mode=mode,
        value=value,
        log1p_value=float(log1p_value),
        M=M,
        stderr=_log_safe_stderr(log_probs, log_n_outcomes, M),
        seed=batch.master_seed,
    )


def true_xeb_bruteforce(table: WeightTable, cap: int = DEFAULT_ENUM_CAP) -> XebEstimate:
    """N * sum_x p(x)**2 - 1 from full enumeration (d**n capped)."""
    pmf = enumerate_pmf(table, cap=cap)
    n_outcomes = float(table.d**table.n)
    value = n_outcomes * float(np.dot(pmf.probs, pmf.probs)) - 1.0
    return XebEstimate(
        n=table.n,
        d=table.d,
        mode="true_bruteforce",
        value=value,
        log1p_value=float(np.log1p(value)),
        seed=table.seed,
    )


def closed_form_factors(table: WeightTable) -> np.ndarray:
    """Per-row factors d * sum_j w_i(j)**2; each lies in [1, d]."""
    return table.d * np.square(table.rows).sum(axis=1)


def true_xeb_closed_form(table: WeightTable) -> XebEstimate:
    """True XEB as a product over rows, O(nd) for any n.

    The digit-to-prefix-sum map is a bijection, so the outcome distribution
    is a product in carry space and sum_x p(x)**2 = prod_i sum_j w_i(j)**2.
    The value is the direct factor product minus 1 (kept exact for exactly
    representable products); log1p_value is the factor log sum.
    """
    factors = closed_form_factors(table)
    log1p_value = float(np.log(factors).sum())
    with np.errstate(over="ignore"):
        value = float(np.prod(factors) - 1.0)
    return XebEstimate(
        n=table.n,
        d=table.d,
        mode="true_closedform",
        value=value,
        log1p_value=log1p_value,
        seed=table.seed,
    )


def _csv_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def estimate_to_csv_row(est: XebEstimate) -> str:
    return ",".join(
        (
            str(est.n),
            str(est.d),
            _csv_field(est.M),
            est.mode,
            _csv_field(float(est.value)),
            _csv_field(float(est.log1p_value)),
            _csv_field(None if est.stderr is None else float(est.stderr)),
            _csv_field(est.seed),
        )
    )


def estimates_to_csv(rows: Sequence[XebEstimate]) -> str:
    """Render estimates as CSV, one row each, ``inf`` spelled literally."""
    lines = [CSV_HEADER]
    lines.extend(estimate_to_csv_row(row) for row in rows)
    return "\n".join(lines) + "\n"
