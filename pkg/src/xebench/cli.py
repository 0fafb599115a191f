"""Command-line driver: writes weight tables, sample batches, XEB estimates,
dense pmfs, and timing reports as CSV/JSON files.

Output is deterministic: the same arguments and seed produce byte-identical
files, except for the bench report whose wall-clock fields are measurements.
Relative output paths are resolved against $XEBENCH_OUT_DIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from .bench import advantage_ratio, extrapolate_enum_time, time_enumeration, time_sampling
from .distribution import generate_weight_table, load_weight_table, table_to_json
from .oracle import DEFAULT_ENUM_CAP, ResourceLimitError, empirical_histogram, enumerate_pmf, pmf_to_csv
from .rng import substream
from .sampler import batch_to_csv, draw_batch
from .xeb import MODES, empirical_xeb, estimates_to_csv, true_xeb_bruteforce, true_xeb_closed_form

DEFAULT_M = 1_000_000
SWEEP_GRID = "2..30"
BIGSWEEP_GRID = "100..1000:10,1023"


def _log(message: str) -> None:
    print(f"[xebench] {message}", file=sys.stderr)


def _resolve_out(path_text: str) -> Path:
    path = Path(path_text)
    if not path.is_absolute():
        base = os.environ.get("XEBENCH_OUT_DIR")
        if base:
            path = Path(base) / path
    return path


def _atomic_write(path: Path, text: str) -> None:
    """Write via a temp file and rename, so failures leave no partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def parse_n_list(text: str) -> list[int]:
    """Parse comma-separated n values and A..B[:STEP] ranges, e.g. '2..30' or '100..1000:10,1023'."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                span, _, step_text = part.partition(":")
                a_text, _, b_text = span.partition("..")
                a, b = int(a_text), int(b_text)
                step = int(step_text) if step_text else 1
                if step < 1 or b < a:
                    raise ValueError
                values.extend(range(a, b + 1, step))
            else:
                values.append(int(part))
        except ValueError:
            raise ValueError(f"cannot parse n-list entry {part!r}") from None
    if not values:
        raise ValueError(f"empty n list: {text!r}")
    if any(v < 1 for v in values):
        raise ValueError("n values must be >= 1")
    return values


def _per_n_seeds(master_seed: int, n: int) -> tuple[int, int]:
    """Fresh (table_seed, batch_seed) for one sweep point."""
    n_seed = substream(master_seed, n)
    return substream(n_seed, 0), substream(n_seed, 1)


def _cmd_gen(args: argparse.Namespace) -> None:
    table = generate_weight_table(args.n, args.d, args.seed)
    out = _resolve_out(args.out)
    _atomic_write(out, table_to_json(table))
    _log(f"gen n={args.n} d={args.d} seed={args.seed} -> {out}")


def _cmd_sample(args: argparse.Namespace) -> None:
    table = load_weight_table(args.table)
    batch = draw_batch(table, args.M, args.seed, workers=args.workers)
    out = _resolve_out(args.out)
    _atomic_write(out, batch_to_csv(batch))
    _log(f"sample n={table.n} d={table.d} M={args.M} seed={args.seed} -> {out}")


def _cmd_xeb(args: argparse.Namespace) -> None:
    table = load_weight_table(args.table)
    if args.modes is None:
        modes, explicit = list(MODES), False
    else:
        modes = [m.strip() for m in args.modes.split(",") if m.strip()]
        explicit = True
        for mode in modes:
            if mode not in MODES:
                raise ValueError(
                    f"unknown mode {mode!r}; choose from {', '.join(MODES)}"
                )
    modes = [m for m in MODES if m in modes]
    rows = []
    batch = None
    if any(m.startswith("empirical") for m in modes):
        batch = draw_batch(table, args.M, args.seed)
    for mode in modes:
        if mode.startswith("empirical"):
            rows.append(empirical_xeb(table, batch, mode))
        elif mode == "true_bruteforce":
            if table.outcome_count > args.enum_cap and not explicit:
                _log(
                    f"xeb skipping true_bruteforce: d**n = {table.outcome_count} "
                    f"exceeds enumeration cap {args.enum_cap}"
                )
                continue
            rows.append(true_xeb_bruteforce(table, cap=args.enum_cap))
        else:
            rows.append(true_xeb_closed_form(table))
    out = _resolve_out(args.out)
    _atomic_write(out, estimates_to_csv(rows))
    _log(f"xeb n={table.n} d={table.d} modes={','.join(r.mode for r in rows)} -> {out}")


def _run_sweep(args: argparse.Namespace, name: str, include_bruteforce: bool) -> None:
    ns = sorted(set(parse_n_list(args.n)))
    rows = []
    for n in ns:
        started = time.perf_counter()
        table_seed, batch_seed = _per_n_seeds(args.seed, n)
        table = generate_weight_table(n, args.d, table_seed)
        batch = draw_batch(table, args.M, batch_seed)
        rows.append(empirical_xeb(table, batch, "empirical_naive"))
        rows.append(empirical_xeb(table, batch, "empirical_logspace"))
        if include_bruteforce and table.outcome_count <= args.enum_cap:
            rows.append(true_xeb_bruteforce(table, cap=args.enum_cap))
        rows.append(true_xeb_closed_form(table))
        _log(
            f"{name} n={n} d={args.d} M={args.M} "
            f"done in {time.perf_counter() - started:.2f}s"
        )
    out = _resolve_out(args.out)
    _atomic_write(out, estimates_to_csv(rows))
    _log(f"{name} wrote {len(rows)} rows -> {out}")


def _cmd_sweep(args: argparse.Namespace) -> None:
    _run_sweep(args, "sweep", include_bruteforce=True)


def _cmd_bigsweep(args: argparse.Namespace) -> None:
    _run_sweep(args, "bigsweep", include_bruteforce=False)


def _cmd_bench(args: argparse.Namespace) -> None:
    table_seed, batch_seed = _per_n_seeds(args.seed, args.n)
    table = generate_weight_table(args.n, args.d, table_seed)
    sampling = time_sampling(table, args.M, master_seed=batch_seed)
    _log(
        f"bench sampling n={args.n} d={args.d} M={args.M}: "
        f"{sampling.per_item_seconds * 1e6:.2f} us/sample"
    )
    enum_table_seed, _ = _per_n_seeds(args.seed, args.enum_n)
    enum_table = generate_weight_table(args.enum_n, args.d, enum_table_seed)
    enumeration = time_enumeration(enum_table, cap=args.enum_cap)
    _log(
        f"bench enumeration n={args.enum_n} d={args.d}: "
        f"{enumeration.wall_seconds:.3f}s"
    )
    log10_enum = extrapolate_enum_time(
        enumeration.wall_seconds, args.enum_n, args.n, args.d
    )
    advantage = advantage_ratio(log10_enum, sampling.per_item_seconds)
    doc = {
        "records": [asdict(sampling), asdict(enumeration)],
        "advantage": asdict(advantage),
    }
    out = _resolve_out(args.out)
    _atomic_write(out, json.dumps(doc, indent=2) + "\n")
    _log(f"bench log10_advantage={advantage.log10_advantage:.2f} -> {out}")


def _cmd_pmf(args: argparse.Namespace) -> None:
    table = load_weight_table(args.table)
    if args.M is None:
        pmf = enumerate_pmf(table, cap=args.enum_cap)
        kind = "exact"
    else:
        batch = draw_batch(table, args.M, args.seed)
        pmf = empirical_histogram(batch, cap=args.enum_cap)
        kind = f"empirical M={args.M} seed={args.seed}"
    out = _resolve_out(args.out)
    _atomic_write(out, pmf_to_csv(pmf))
    _log(f"pmf {kind} n={table.n} d={table.d} -> {out}")


def _add_common(sub: argparse.ArgumentParser, *, seed_default: int = 0) -> None:
    sub.add_argument("--seed", type=int, default=seed_default, help="master seed (default %(default)s)")
    sub.add_argument("--out", required=True, help="output file path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xebench",
        description=(
            "Exact sampling and linear cross-entropy benchmarking for "
            "product-form distributions over d**n outcomes."
        ),
        epilog="Relative --out paths are resolved against $XEBENCH_OUT_DIR when set.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a weight table and write it as JSON")
    gen.add_argument("--n", type=int, required=True, help="digit count")
    gen.add_argument("--d", type=int, default=2, help="alphabet size (default %(default)s)")
    _add_common(gen)
    gen.set_defaults(func=_cmd_gen)

    sample = sub.add_parser("sample", help="draw a batch and write it as CSV")
    sample.add_argument("--table", required=True, help="weight-table JSON path")
    sample.add_argument("--M", type=int, default=DEFAULT_M, help="sample count (default %(default)s)")
    sample.add_argument("--workers", type=int, default=1, help="worker count (default %(default)s)")
    _add_common(sample)
    sample.set_defaults(func=_cmd_sample)

    xeb = sub.add_parser("xeb", help="compute XEB estimates for one table")
    xeb.add_argument("--table", required=True, help="weight-table JSON path")
    xeb.add_argument("--M", type=int, default=DEFAULT_M, help="sample count (default %(default)s)")
    xeb.add_argument(
        "--modes",
        default=None,
        help=f"comma-separated subset of {{{','.join(MODES)}}} (default: all that fit)",
    )
    xeb.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="enumeration entry cap (default %(default)s)")
    _add_common(xeb)
    xeb.set_defaults(func=_cmd_xeb)

    sweep = sub.add_parser("sweep", help="XEB vs n with brute-force and closed-form truth")
    sweep.add_argument("--n", default=SWEEP_GRID, help="n list, e.g. 2..30 or 2,5,9 (default %(default)s)")
    sweep.add_argument("--d", type=int, default=2, help="alphabet size (default %(default)s)")
    sweep.add_argument("--M", type=int, default=DEFAULT_M, help="samples per n (default %(default)s)")
    sweep.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="enumeration entry cap (default %(default)s)")
    _add_common(sweep)
    sweep.set_defaults(func=_cmd_sweep)

    bigsweep = sub.add_parser("bigsweep", help="XEB vs n at large n, closed-form truth only")
    bigsweep.add_argument("--n", default=BIGSWEEP_GRID, help="n list (default %(default)s)")
    bigsweep.add_argument("--d", type=int, default=2, help="alphabet size (default %(default)s)")
    bigsweep.add_argument("--M", type=int, default=DEFAULT_M, help="samples per n (default %(default)s)")
    bigsweep.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help=argparse.SUPPRESS)
    _add_common(bigsweep)
    bigsweep.set_defaults(func=_cmd_bigsweep)

    bench = sub.add_parser("bench", help="time sampling and enumeration, extrapolate, report advantage")
    bench.add_argument("--n", type=int, default=1023, help="sampling digit count (default %(default)s)")
    bench.add_argument("--d", type=int, default=2, help="alphabet size (default %(default)s)")
    bench.add_argument("--M", type=int, default=100_000, help="timed sample count (default %(default)s)")
    bench.add_argument("--enum-n", type=int, default=20, help="measured enumeration size (default %(default)s)")
    bench.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="enumeration entry cap (default %(default)s)")
    _add_common(bench)
    bench.set_defaults(func=_cmd_bench)

    pmf = sub.add_parser("pmf", help="write a dense pmf CSV (exact, or empirical with --M)")
    pmf.add_argument("--table", required=True, help="weight-table JSON path")
    pmf.add_argument("--M", type=int, default=None, help="sample count for an empirical histogram (default: exact)")
    pmf.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="enumeration entry cap (default %(default)s)")
    _add_common(pmf)
    pmf.set_defaults(func=_cmd_pmf)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError, ResourceLimitError) as exc:
        print(f"xebench: error: {exc}", file=sys.stderr)
        return 1
    return 0
