"""Exact sampling and log-probability evaluation for weight tables.

Sampling works in carry space: the prefix sums c_0..c_{n-1} of a digit
string are mutually independent with c_i distributed by row i, so each c_i
is one inverse-CDF draw and the digits are recovered as s_0 = c_0,
s_i = (c_i - c_{i-1}) mod d. Sample m consumes only stream elements derived
from (master_seed, m), so a batch is the same whatever the chunking or
worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distribution import DigitString, WeightTable
from .rng import GOLDEN_GAMMA, MASK64, mix64_array, unit_halfopen

_CHUNK_ELEMENTS = 1 << 23

_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SampleBatch:
    """M outcomes from one table plus their exact natural-log probabilities."""

    n: int
    d: int
    digits: np.ndarray
    log_probs: np.ndarray
    master_seed: int | None = None

    def __post_init__(self) -> None:
        digits = np.asarray(self.digits)
        log_probs = np.asarray(self.log_probs, dtype=np.float64)
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if digits.ndim != 2 or digits.shape[1] != self.n:
            raise ValueError(f"digits must have shape (M, {self.n})")
        if digits.shape[0] < 1:
            raise ValueError("batch must contain at least one sample")
        if log_probs.shape != (digits.shape[0],):
            raise ValueError("log_probs length must match sample count")
        if int(digits.min()) < 0 or int(digits.max()) >= self.d:
            raise ValueError(f"digits must lie in [0, {self.d - 1}]")
        digits = np.ascontiguousarray(digits)
        digits.setflags(write=False)
        log_probs.setflags(write=False)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "log_probs", log_probs)

    @property
    def M(self) -> int:
        return self.digits.shape[0]

    def digit_string(self, m: int) -> DigitString:
        return DigitString(digits=tuple(int(v) for v in self.digits[m]), d=self.d)


def _digit_dtype(d: int) -> np.dtype:
    return np.min_scalar_type(d - 1)


def _log_rows(table: WeightTable) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(table.rows)


def _uniform_matrix(master_seed: int, indices: np.ndarray, n: int) -> np.ndarray:
    """[0,1) uniforms with one row per sample index and one column per digit."""
    gamma = np.uint64(GOLDEN_GAMMA)
    idx = indices.astype(np.uint64)
    bases = mix64_array(np.uint64(master_seed & MASK64) + (idx + np.uint64(1)) * gamma)
    offsets = np.arange(1, n + 1, dtype=np.uint64) * gamma
    return unit_halfopen(mix64_array(bases[:, None] + offsets[None, :]))


def _draw_indices(
    table: WeightTable,
    indices: np.ndarray,
    master_seed: int,
    cum_rows: np.ndarray,
    log_rows: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    n, d = table.n, table.d
    u = _uniform_matrix(master_seed, indices, n)
    # first index whose cumulative row sum strictly exceeds u
    carries = (u[:, :, None] >= cum_rows[None, :, :]).sum(axis=2)
    np.minimum(carries, d - 1, out=carries)
    log_probs = log_rows[np.arange(n)[None, :], carries].sum(axis=1)
    digits = np.empty_like(carries)
    digits[:, 0] = carries[:, 0]
    if n > 1:
        np.subtract(carries[:, 1:], carries[:, :-1], out=digits[:, 1:])
        np.mod(digits[:, 1:], d, out=digits[:, 1:])
    return digits.astype(_digit_dtype(d)), log_probs


def draw_sample(table: WeightTable, sample_index: int, master_seed: int) -> DigitString:
    """The digit string sample number ``sample_index`` of the batch for ``master_seed``."""
    if sample_index < 0:
        raise ValueError(f"sample_index must be >= 0, got {sample_index}")
    idx = np.array([sample_index], dtype=np.uint64)
    cum_rows = np.cumsum(table.rows, axis=1)
    digits, _ = _draw_indices(table, idx, master_seed, cum_rows, _log_rows(table))
    return DigitString(digits=tuple(int(v) for v in digits[0]), d=table.d)


def draw_batch(
    table: WeightTable,
    M: int,
    master_seed: int,
    workers: int = 1,
    chunk_size: int | None = None,
) -> SampleBatch:
    """Draw M samples; element m equals draw_sample(table, m, master_seed).

    The result is bit-identical for any ``workers`` or ``chunk_size``.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if chunk_size is None:
        chunk_size = max(1, _CHUNK_ELEMENTS // (table.n * table.d))
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    cum_rows = np.cumsum(table.rows, axis=1)
    log_rows = _log_rows(table)
    digits = np.empty((M, table.n), dtype=_digit_dtype(table.d))
    log_probs = np.empty(M, dtype=np.float64)

    def fill(lo: int, hi: int) -> None:
        for start in range(lo, hi, chunk_size):
            stop = min(start + chunk_size, hi)
            idx = np.arange(start, stop, dtype=np.uint64)
            dg, lp = _draw_indices(table, idx, master_seed, cum_rows, log_rows)
            digits[start:stop] = dg
            log_probs[start:stop] = lp

    if workers == 1:
        fill(0, M)
    else:
        bounds = [round(M * w / workers) for w in range(workers + 1)]
        spans = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda span: fill(*span), spans))

    return SampleBatch(
        n=table.n,
        d=table.d,
        digits=digits,
        log_probs=log_probs,
        master_seed=int(master_seed) & MASK64,
    )


def log_prob_batch(
    table: WeightTable, digits: np.ndarray, chunk_size: int | None = None
) -> np.ndarray:
    """Natural-log probability of each digit row under ``table``.

    Zero weights on a path give -inf, not an error.
    """
    digits = np.asarray(digits)
    if digits.ndim != 2 or digits.shape[1] != table.n:
        raise ValueError(f"digits must have shape (M, {table.n})")
    if digits.size and (int(digits.min()) < 0 or int(digits.max()) >= table.d):
        raise ValueError(f"digits must lie in [0, {table.d - 1}]")
    if chunk_size is None:
        chunk_size = max(1, _CHUNK_ELEMENTS // table.n)
    log_rows = _log_rows(table)
    positions = np.arange(table.n)[None, :]
    out = np.empty(digits.shape[0], dtype=np.float64)
    for start in range(0, digits.shape[0], chunk_size):
        stop = min(start + chunk_size, digits.shape[0])
        carries = digits[start:stop].astype(np.int64).cumsum(axis=1) % table.d
        out[start:stop] = log_rows[positions, carries].sum(axis=1)
    return out


def log_prob(table: WeightTable, s: DigitString) -> float:
    """Natural-log probability of one digit string: sum_i ln w_i(c_i)."""
    if s.d != table.d:
        raise ValueError(f"digit string is base {s.d}, table is base {table.d}")
    if s.n != table.n:
        raise ValueError(f"digit string has {s.n} digits, table expects {table.n}")
    return float(log_prob_batch(table, np.array([s.digits]))[0])


def make_batch(
    table: WeightTable,
    outcomes: Sequence[DigitString] | Sequence[Sequence[int]] | np.ndarray,
    master_seed: int | None = None,
) -> SampleBatch:
    """Package explicit outcomes with their exact log-probabilities."""
    rows = []
    for outcome in outcomes:
        if isinstance(outcome, DigitString):
            if outcome.d != table.d:
                raise ValueError(
                    f"digit string is base {outcome.d}, table is base {table.d}"
                )
            rows.append(outcome.digits)
        else:
            rows.append(tuple(int(v) for v in outcome))
    digits = np.asarray(rows, dtype=np.int64)
    log_probs = log_prob_batch(table, digits)
    return SampleBatch(
        n=table.n,
        d=table.d,
        digits=digits.astype(_digit_dtype(table.d)),
        log_probs=log_probs,
        master_seed=master_seed,
    )


def batch_to_csv(batch: SampleBatch) -> str:
    """Render a batch as CSV ``sample_index,x_or_digits,log_prob``.

    Outcomes serialize as a decimal integer when d**n <= 2**63, otherwise as
    base-d digit text with the most significant digit written last.
    """
    lines = ["sample_index,x_or_digits,log_prob"]
    if batch.d**batch.n <= 2**63:
        powers = np.array([batch.d**i for i in range(batch.n)], dtype=np.uint64)
        codes = batch.digits.astype(np.uint64) @ powers
        outcome_texts = [str(int(code)) for code in codes]
    else:
        if batch.d > len(_DIGIT_CHARS):
            raise ValueError(
                f"cannot serialize digits for d={batch.d}; "
                f"digit text supports d <= {len(_DIGIT_CHARS)}"
            )
        outcome_texts = [
            "".join(_DIGIT_CHARS[v] for v in row) for row in batch.digits.tolist()
        ]
    for m, (text, lp) in enumerate(zip(outcome_texts, batch.log_probs)):
        lines.append(f"{m},{text},{format(lp, '.17g')}")
    return "\n".join(lines) + "\n"
