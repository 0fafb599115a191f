"""The three figure renderers.

Each renderer loads its CSV inputs, draws one PNG, writes it atomically, and
returns a small summary dict saying what was plotted (handy for callers and
tests; images are hard to assert on).
"""

from __future__ import annotations

import math
import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .loader import SchemaError, load_estimates, load_pmf

FIGURE_DPI = 150

# fixed metadata keeps a rerun byte-identical (savefig would otherwise embed
# the library version)
_PNG_METADATA = {"Software": "xebench-figures"}

_BLUE = "#4c72b0"
_RED = "#c44e52"


def _atomic_save(fig, out_path) -> None:
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = out.with_name(out.name + ".tmp.png")
    try:
        fig.savefig(tmp, format="png", dpi=FIGURE_DPI, metadata=_PNG_METADATA)
        os.replace(tmp, out)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    finally:
        plt.close(fig)


def _expm1_or_inf(v: float) -> float:
    # math.expm1 raises OverflowError instead of returning inf
    return math.inf if v > 709.0 else math.expm1(v)


def render_pmf_pair(exact_path, empirical_path, out_path) -> dict:
    """Two panels: exact outcome probabilities next to sampled frequencies."""
    exact_x, exact_p = load_pmf(exact_path)
    emp_x, emp_p = load_pmf(empirical_path)
    if len(exact_x) != len(emp_x):
        raise SchemaError(
            f"pmf sizes differ: {len(exact_x)} vs {len(emp_x)} outcomes"
        )
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.6), sharey=True)
    panels = (
        (axes[0], exact_x, exact_p, "exact", _RED),
        (axes[1], emp_x, emp_p, "sampled", _BLUE),
    )
    for ax, xs, ps, title, color in panels:
        ax.plot(xs, ps, ".", markersize=3, color=color)
        ax.set_title(title)
        ax.set_xlabel("outcome index x")
        ax.margins(x=0.02)
    axes[0].set_ylabel("probability")
    fig.tight_layout()
    _atomic_save(fig, out_path)
    return {"points": len(exact_x)}


def render_xeb_vs_n(sweep_path, out_path) -> dict:
    """Empirical XEB dots with open-circle truth overlay, log y axis."""
    rows = load_estimates(sweep_path)
    empirical = sorted(
        (r for r in rows if r.mode == "empirical_logspace"), key=lambda r: r.n
    )
    truth = sorted(
        (r for r in rows if r.mode == "true_closedform"), key=lambda r: r.n
    )
    if not empirical or not truth:
        raise SchemaError(
            f"{sweep_path}: need empirical_logspace and true_closedform rows"
        )
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(
        [r.n for r in empirical],
        [r.value for r in empirical],
        ".",
        color=_BLUE,
        markersize=7,
        label="empirical",
    )
    ax.plot(
        [r.n for r in truth],
        [r.value for r in truth],
        "o",
        markerfacecolor="none",
        color=_RED,
        markersize=7,
        label="true (closed form)",
    )
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("XEB")
    ax.legend()
    fig.tight_layout()
    _atomic_save(fig, out_path)
    return {"empirical_points": len(empirical), "truth_points": len(truth)}


def render_big_xeb(sweep_path, out_path) -> dict:
    """Large-n XEB: naive dots where finite, log-space trend line, log y axis.

    Naive values that overflowed to inf cannot sit on a log axis; they are
    omitted and the affected n values are listed in a caption note.
    """
    rows = load_estimates(sweep_path)
    logspace = sorted(
        (r for r in rows if r.mode == "empirical_logspace"), key=lambda r: r.n
    )
    naive = sorted(
        (r for r in rows if r.mode == "empirical_naive"), key=lambda r: r.n
    )
    if not logspace or not naive:
        raise SchemaError(
            f"{sweep_path}: need empirical_naive and empirical_logspace rows"
        )
    overflowed = [r.n for r in naive if math.isinf(r.value)]
    finite_naive = [r for r in naive if math.isfinite(r.value)]
    trend = [
        (r.n, _expm1_or_inf(r.log1p_value))
        for r in logspace
        if math.isfinite(_expm1_or_inf(r.log1p_value))
    ]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if trend:
        ax.plot(
            [n for n, _ in trend],
            [v for _, v in trend],
            "-",
            color=_BLUE,
            linewidth=1.2,
            label="log-space (exp of ln(XEB+1))",
        )
    ax.plot(
        [r.n for r in finite_naive],
        [r.value for r in finite_naive],
        ".",
        color="#222222",
        markersize=5,
        label="naive arithmetic",
    )
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("XEB")
    ax.legend(loc="upper left")
    if overflowed:
        listed = ", ".join(str(n) for n in overflowed)
        fig.text(
            0.01,
            0.01,
            f"naive value overflows to inf at n = {listed} (points omitted)",
            fontsize=7,
        )
    fig.tight_layout(rect=(0, 0.04, 1, 1))
    _atomic_save(fig, out_path)
    return {
        "trend_points": len(trend),
        "naive_points": len(finite_naive),
        "overflowed_n": overflowed,
    }
