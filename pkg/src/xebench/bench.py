"""Timing measurements, d**n extrapolation, and sampling-advantage arithmetic.

Measured runs are kept in linear seconds; anything extrapolated lives in
log10 only, because the interesting targets (full enumeration at n around
1000) are far beyond double range in linear scale.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .distribution import WeightTable
from .oracle import DEFAULT_ENUM_CAP, enumerate_pmf
from .sampler import draw_batch

SECONDS_PER_YEAR = 31_557_600.0  # Julian year: 365.25 days

_WARMUP_SAMPLES = 10_000


@dataclass(frozen=True)
class TimingRecord:
    """One measured run: wall-clock seconds and amortized per-item cost."""

    task: str
    n: int
    d: int
    M: int | None
    wall_seconds: float
    per_item_seconds: float


@dataclass(frozen=True)
class AdvantageReport:
    """log10 comparison of enumeration cost against per-sample cost."""

    log10_enum_seconds: float
    log10_enum_years: float
    log10_per_sample_seconds: float
    log10_advantage: float


def time_sampling(table: WeightTable, M: int, master_seed: int = 0) -> TimingRecord:
    """Wall-clock cost of one single-threaded draw_batch, after a warm-up batch."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    draw_batch(table, min(M, _WARMUP_SAMPLES), master_seed)
    start = time.perf_counter()
    draw_batch(table, M, master_seed)
    wall = max(time.perf_counter() - start, 1e-9)
    return TimingRecord(
        task="sampling",
        n=table.n,
        d=table.d,
        M=M,
        wall_seconds=wall,
        per_item_seconds=wall / M,
    )


def time_enumeration(table: WeightTable, cap: int = DEFAULT_ENUM_CAP) -> TimingRecord:
    """Wall-clock cost of one full enumeration, after a warm-up run."""
    enumerate_pmf(table, cap=cap)
    start = time.perf_counter()
    enumerate_pmf(table, cap=cap)
    wall = max(time.perf_counter() - start, 1e-9)
    return TimingRecord(
        task="enumeration",
        n=table.n,
        d=table.d,
        M=None,
        wall_seconds=wall,
        per_item_seconds=wall / float(table.d**table.n),
    )


def extrapolate_enum_time(
    t_ref_seconds: float, n_ref: int, n_target: int, d: int
) -> float:
    """log10 seconds for enumerating d**n_target, scaled from a reference run.

    Enumeration cost is proportional to d**n, so the extrapolation is exactly
    linear in n_target with slope log10(d). The linear-scale value is never
    materialized.
    """
    if t_ref_seconds <= 0:
        raise ValueError(f"t_ref_seconds must be > 0, got {t_ref_seconds}")
    if n_ref < 1 or n_target < 1:
        raise ValueError("digit counts must be >= 1")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return math.log10(t_ref_seconds) + (n_target - n_ref) * math.log10(d)


def advantage_ratio(
    log10_enum_seconds: float, per_sample_seconds: float
) -> AdvantageReport:
    """Enumeration-vs-sampling cost ratio, all in log10."""
    if per_sample_seconds <= 0:
        raise ValueError(
            f"per_sample_seconds must be > 0, got {per_sample_seconds}"
        )
    log10_per_sample = math.log10(per_sample_seconds)
    return AdvantageReport(
        log10_enum_seconds=log10_enum_seconds,
        log10_enum_years=log10_enum_seconds - math.log10(SECONDS_PER_YEAR),
        log10_per_sample_seconds=log10_per_sample,
        log10_advantage=log10_enum_seconds - log10_per_sample,
    )
