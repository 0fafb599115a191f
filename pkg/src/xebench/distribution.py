"""Weight-table parameterization, digit/index codecs, and conditional pmfs.

A distribution over d**n outcomes is specified by an n x d table whose rows
are pmfs. An outcome is a digit string s_0..s_{n-1} (base d, s_0 least
significant) encoding the integer x = sum_i s_i * d**i. The probability of a
string factorizes through its running prefix sums c_i = (s_0 + ... + s_i)
mod d: each c_i is distributed by row i, independently of the other rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rng import MASK64, stream_values, unit_open

ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class WeightTable:
    """n rows of d weights; row i is the pmf of the i-th prefix-sum digit."""

    n: int
    d: int
    rows: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        rows = np.array(self.rows, dtype=np.float64)
        if rows.shape != (self.n, self.d):
            raise ValueError(
                f"rows must have shape {(self.n, self.d)}, got {rows.shape}"
            )
        if not np.all(np.isfinite(rows)) or np.any(rows < 0):
            raise ValueError("weights must be finite and non-negative")
        sums = rows.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            worst = int(np.argmax(np.abs(sums - 1.0)))
            raise ValueError(f"row {worst} sums to {sums[worst]!r}, not 1")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def outcome_count(self) -> int:
        """d**n as an exact integer."""
        return self.d**self.n


@dataclass(frozen=True)
class DigitString:
    """One outcome: base-d digits with s_0 (least significant) first."""

    digits: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        digits = tuple(int(s) for s in self.digits)
        if not digits:
            raise ValueError("digit string must be non-empty")
        if any(s < 0 or s >= self.d for s in digits):
            raise ValueError(f"digits must lie in [0, {self.d - 1}]")
        object.__setattr__(self, "digits", digits)

    @property
    def n(self) -> int:
        return len(self.digits)


def normalize_pmf(raw: Sequence[float]) -> np.ndarray:
    """Scale a non-negative vector so it sums to 1.

    Raises ValueError for vectors shorter than 2 entries, negative or
    non-finite entries, or an all-zero vector.
    """
    vec = np.asarray(raw, dtype=np.float64)
    if vec.ndim != 1 or vec.size < 2:
        raise ValueError("pmf needs at least 2 entries")
    if not np.all(np.isfinite(vec)) or np.any(vec < 0):
        raise ValueError("pmf entries must be finite and non-negative")
    total = vec.sum()
    if total <= 0:
        raise ValueError("pmf entries sum to zero")
    return vec / total


def generate_weight_table(n: int, d: int, seed: int) -> WeightTable:
    """Fill an n x d table with open-interval uniforms from ``seed``, rows normalized.

    Pure function of (n, d, seed): identical arguments always produce a
    bit-identical table. Entries are strictly inside (0, 1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    raw = unit_open(stream_values(seed, 0, n * d)).reshape(n, d)
    rows = raw / raw.sum(axis=1, keepdims=True)
    return WeightTable(n=n, d=d, rows=rows, seed=int(seed) & MASK64)


def digits_to_index(s: DigitString) -> int:
    """Exact integer code x = sum_i s_i * d**i (arbitrary width)."""
    x = 0
    for digit in reversed(s.digits):
        x = x * s.d + digit
    return x


def index_to_digits(x: int, n: int, d: int) -> DigitString:
    """Inverse of :func:`digits_to_index` on 0 <= x < d**n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if x < 0 or x >= d**n:
        raise ValueError(f"index {x} out of range for {n} base-{d} digits")
    digits = []
    for _ in range(n):
        digits.append(x % d)
        x //= d
    return DigitString(digits=tuple(digits), d=d)


def conditional_pmf(table: WeightTable, i: int, carry: int) -> np.ndarray:
    """Pmf of digit i given prefix sum ``carry``: entry s is row i at (carry + s) mod d."""
    if not 0 <= i < table.n:
        raise ValueError(f"row index {i} out of range for n={table.n}")
    if not 0 <= carry < table.d:
        raise ValueError(f"carry {carry} out of range for d={table.d}")
    return np.roll(table.rows[i], -carry)


def table_to_json(table: WeightTable) -> str:
    """Serialize a table to JSON with reals at 17 significant digits (value-exact round trip)."""
    seed_text = "null" if table.seed is None else str(table.seed)
    row_texts = ",\n".join(
        "    [" + ", ".join(format(w, ".17g") for w in row) + "]"
        for row in table.rows
    )
    return (
        "{\n"
        '  "format_version": 1,\n'
        f'  "n": {table.n},\n'
        f'  "d": {table.d},\n'
        f'  "seed": {seed_text},\n'
        '  "rows": [\n'
        f"{row_texts}\n"
        "  ]\n"
        "}\n"
    )


def table_from_json(text: str) -> WeightTable:
    """Parse a table serialized by :func:`table_to_json`.

    Zero entries are accepted (deserialized tables may describe degenerate
    distributions); rows must still be pmfs of the declared shape.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid weight-table JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("weight-table JSON must be an object")
    version = doc.get("format_version")
    if version != 1:
        raise ValueError(f"unsupported format_version {version!r}")
    for key in ("n", "d", "rows"):
        if key not in doc:
            raise ValueError(f"weight-table JSON missing field {key!r}")
    seed = doc.get("seed")
    if seed is not None:
        seed = int(seed)
    return WeightTable(n=int(doc["n"]), d=int(doc["d"]), rows=doc["rows"], seed=seed)


def load_weight_table(path) -> WeightTable:
    """Read a weight-table JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return table_from_json(fh.read())
