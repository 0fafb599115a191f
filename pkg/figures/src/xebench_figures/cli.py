"""Command-line driver: renders PNG figures from xebench CSV files."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .render import render_big_xeb, render_pmf_pair, render_xeb_vs_n


def _log(message: str) -> None:
    print(f"[xebench-figures] {message}", file=sys.stderr)


def _cmd_pmf_pair(args: argparse.Namespace) -> None:
    summary = render_pmf_pair(args.exact, args.empirical, args.out)
    _log(f"pmf-pair {summary['points']} outcomes -> {args.out}")


def _cmd_xeb_vs_n(args: argparse.Namespace) -> None:
    summary = render_xeb_vs_n(args.sweep, args.out)
    _log(
        f"xeb-vs-n {summary['empirical_points']} empirical / "
        f"{summary['truth_points']} truth points -> {args.out}"
    )


def _cmd_big_xeb(args: argparse.Namespace) -> None:
    summary = render_big_xeb(args.sweep, args.out)
    skipped = summary["overflowed_n"]
    plural = "s" if len(skipped) != 1 else ""
    note = f", {len(skipped)} inf naive point{plural} omitted" if skipped else ""
    _log(f"big-xeb {summary['trend_points']} points{note} -> {args.out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xebench-figures",
        description="Render PNG figures from xebench CSV outputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pmf = sub.add_parser("pmf-pair", help="exact vs sampled pmf, two panels")
    pmf.add_argument("--exact", required=True, help="exact pmf CSV (x,p)")
    pmf.add_argument("--empirical", required=True, help="empirical pmf CSV (x,p)")
    pmf.add_argument("--out", required=True, help="output PNG path")
    pmf.set_defaults(func=_cmd_pmf_pair)

    sweep = sub.add_parser("xeb-vs-n", help="XEB vs n with truth overlay, log y")
    sweep.add_argument("--sweep", required=True, help="estimate CSV")
    sweep.add_argument("--out", required=True, help="output PNG path")
    sweep.set_defaults(func=_cmd_xeb_vs_n)

    big = sub.add_parser("big-xeb", help="large-n XEB, inf naive points omitted")
    big.add_argument("--sweep", required=True, help="estimate CSV")
    big.add_argument("--out", required=True, help="output PNG path")
    big.set_defaults(func=_cmd_big_xeb)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"xebench-figures: error: {exc}", file=sys.stderr)
        return 1
    return 0
