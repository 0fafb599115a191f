"""Dense enumeration and histogram utilities for small outcome spaces.

Ground truth for everything else: materializes all d**n probabilities in
outcome-index order, subject to a hard entry cap so an oversized request
fails loudly instead of exhausting memory.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .distribution import WeightTable
from .sampler import SampleBatch

DEFAULT_ENUM_CAP = 1 << 26


class ResourceLimitError(RuntimeError):
    """Raised when an operation would exceed a configured size cap."""


@dataclass(frozen=True)
class DensePmf:
    """All d**n outcome probabilities, indexed by integer code."""

    n: int
    d: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (self.d**self.n,):
            raise ValueError(f"probs must have shape ({self.d**self.n},)")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(float(probs.sum()) - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)


def _check_cap(n: int, d: int, cap: int) -> int:
    total = d**n
    if total > cap:
        raise ResourceLimitError(
            f"d**n = {total} outcomes exceeds enumeration cap {cap}"
        )
    return total


def enumerate_pmf(table: WeightTable, cap: int = DEFAULT_ENUM_CAP) -> DensePmf:
    """Probability of every outcome, built one digit position at a time.

    Each pass extends every length-i prefix by one digit, reusing the
    prefix's probability and carry, so total work is O(d**n) rather than
    O(n * d**n).
    """
    _check_cap(table.n, table.d, cap)
    d = table.d
    carry_dtype = np.uint8 if d <= 256 else np.uint32
    probs = np.ones(1, dtype=np.float64)
    carries = np.zeros(1, dtype=carry_dtype)
    base = np.arange(d)
    for i in range(table.n):
        row = table.rows[i]
        size = probs.size
        new_probs = np.empty(size * d, dtype=np.float64)
        new_carries = np.empty(size * d, dtype=carry_dtype)
        for s in range(d):
            perm = ((base + s) % d).astype(carry_dtype)
            block = slice(s * size, (s + 1) * size)
            np.multiply(probs, row[perm][carries], out=new_probs[block])
            new_carries[block] = perm[carries]
        probs, carries = new_probs, new_carries
    return DensePmf(n=table.n, d=table.d, probs=probs)


def empirical_histogram(batch: SampleBatch, cap: int = DEFAULT_ENUM_CAP) -> DensePmf:
    """Outcome frequencies of a batch as a dense pmf over all d**n codes."""
    total = _check_cap(batch.n, batch.d, cap)
    powers = np.array([batch.d**i for i in range(batch.n)], dtype=np.int64)
    counts = np.zeros(total, dtype=np.int64)
    chunk = max(1, (1 << 23) // batch.n)
    for start in range(0, batch.M, chunk):
        codes = batch.digits[start : start + chunk].astype(np.int64) @ powers
        counts += np.bincount(codes, minlength=total)
    return DensePmf(n=batch.n, d=batch.d, probs=counts / batch.M)


def total_variation(a: DensePmf, b: DensePmf) -> float:
    """Half the L1 distance between two pmfs on the same outcome space."""
    if (a.n, a.d) != (b.n, b.d):
        raise ValueError(
            f"pmf dimensions differ: (n={a.n}, d={a.d}) vs (n={b.n}, d={b.d})"
        )
    return 0.5 * float(np.abs(a.probs - b.probs).sum())


def pmf_to_csv(pmf: DensePmf) -> str:
    """Render a dense pmf as CSV ``x,p`` in ascending x."""
    buf = io.StringIO()
    buf.write("x,p\n")
    for x, p in enumerate(pmf.probs):
        buf.write(f"{x},{format(p, '.17g')}\n")
    return buf.getvalue()
