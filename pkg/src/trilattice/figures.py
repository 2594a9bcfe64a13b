"""Matplotlib renderings of the three analysis views, for the CLI report path.

Kept out of the library API on purpose: counting and analysis stay pure and
numeric, and only the command line turns them into pictures.  matplotlib is
imported lazily with the Agg backend so importing the package never touches
a display.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from trilattice.analysis import (
    PowerFit,
    SqrtRationalFit,
    finite_difference,
    growth_sequence,
)

__all__ = ["render_growth", "render_first_difference", "render_third_difference"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update({"figure.figsize": (6.0, 4.5), "font.size": 10})
    return plt


def _pairs(records: Iterable) -> list[tuple[int, int]]:
    return [(r.n, r.count) if hasattr(r, "n") else tuple(r) for r in records]


def render_growth(
    records: Iterable, fit: SqrtRationalFit | None, path: str | Path
) -> Path:
    """Scatter of f(n) = ln(ET(n))/ln(n+1), with the g(x) overlay if given."""
    plt = _pyplot()
    samples = growth_sequence(records)
    fig, ax = plt.subplots()
    ax.plot([s.n for s in samples], [s.f_value for s in samples], ".", ms=3, label="f(n)")
    if fit is not None and samples:
        xs = [n / 4 for n in range(4 * samples[0].n, 4 * samples[-1].n + 1)]
        ax.plot(xs, [fit.predict(x) for x in xs], "-", lw=1,
                label=f"g(x), a={fit.a:.6f}")
    ax.set_xlabel("n")
    ax.set_ylabel("ln ET(n) / ln(n+1)")
    ax.legend(loc="lower right")
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def render_first_difference(
    records: Iterable, fit: PowerFit | None, path: str | Path
) -> Path:
    """ET(n+1) - ET(n) on a log scale, with the power-law overlay if given."""
    plt = _pyplot()
    pairs = _pairs(records)
    diffs = finite_difference([c for _, c in pairs], 1) if len(pairs) > 1 else []
    ns = [n for n, _ in pairs[: len(diffs)]]
    fig, ax = plt.subplots()
    ax.plot(ns, diffs, ".", ms=3, label="ET(n+1) - ET(n)")
    if fit is not None and ns:
        ax.plot(ns, [fit.predict(n) for n in ns], "-", lw=1,
                label=f"h(x), k={fit.exponent:.4f}")
    if diffs and min(diffs) > 0:
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("first difference")
    ax.legend(loc="lower right")
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def render_third_difference(records: Iterable, path: str | Path) -> Path:
    """The jagged third difference of ET(n); no model curve exists for it."""
    plt = _pyplot()
    pairs = _pairs(records)
    diffs = finite_difference([c for _, c in pairs], 3) if len(pairs) > 3 else []
    ns = [n for n, _ in pairs[: len(diffs)]]
    fig, ax = plt.subplots()
    ax.plot(ns, diffs, "-", lw=0.7)
    ax.set_xlabel("n")
    ax.set_ylabel("third difference")
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path
