"""Strict CSV loading for the two input schemas.

Estimate files carry one XEB estimate per row; pmf files carry one outcome
probability per row. Header mismatches and malformed fields raise
SchemaError rather than producing a half-read plot.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

ESTIMATE_COLUMNS = ["n", "d", "M", "mode", "value", "log1p_value", "stderr", "seed"]
PMF_COLUMNS = ["x", "p"]


class SchemaError(ValueError):
    """An input CSV does not match the expected schema."""


@dataclass(frozen=True)
class EstimateRow:
    n: int
    d: int
    M: int | None
    mode: str
    value: float
    log1p_value: float
    stderr: float | None
    seed: int | None


def _check_header(path, header, expected) -> None:
    if header != expected:
        found = ",".join(header) if header else "empty file"
        raise SchemaError(
            f"{path}: expected columns {','.join(expected)}, found {found}"
        )


def load_estimates(path) -> list[EstimateRow]:
    """Read an estimate CSV; empty M/stderr/seed fields become None."""
    rows: list[EstimateRow] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        _check_header(path, next(reader, None), ESTIMATE_COLUMNS)
        for lineno, record in enumerate(reader, start=2):
            if len(record) != len(ESTIMATE_COLUMNS):
                raise SchemaError(
                    f"{path}:{lineno}: row has {len(record)} fields, "
                    f"expected {len(ESTIMATE_COLUMNS)}"
                )
            n, d, m_text, mode, value, log1p_value, stderr, seed = record
            try:
                rows.append(
                    EstimateRow(
                        n=int(n),
                        d=int(d),
                        M=int(m_text) if m_text else None,
                        mode=mode,
                        value=float(value),
                        log1p_value=float(log1p_value),
                        stderr=float(stderr) if stderr else None,
                        seed=int(seed) if seed else None,
                    )
                )
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def load_pmf(path) -> tuple[list[int], list[float]]:
    """Read a pmf CSV into parallel (outcome, probability) lists."""
    xs: list[int] = []
    ps: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        _check_header(path, next(reader, None), PMF_COLUMNS)
        for lineno, record in enumerate(reader, start=2):
            if len(record) != 2:
                raise SchemaError(
                    f"{path}:{lineno}: row has {len(record)} fields, expected 2"
                )
            try:
                xs.append(int(record[0]))
                ps.append(float(record[1]))
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    if not xs:
        raise SchemaError(f"{path}: no data rows")
    return xs, ps
