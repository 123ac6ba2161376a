"""Figures for the CLI report path (matplotlib, Agg backend, written to files)."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .discharge import ChargeLedger, THRESHOLDS  # noqa: E402
from .gen import ExtremalRecord  # noqa: E402

REFERENCE_LINES = {
    "2": Fraction(2),
    "26/11": Fraction(26, 11),
    "18/7": Fraction(18, 7),
    "8/3": Fraction(8, 3),
}


def _finish(fig, ax, path: str | Path) -> Path:
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def plot_charges(ledger: ChargeLedger, path: str | Path, title: str | None = None) -> Path:
    """Histogram of final charges with the family threshold marked."""
    fig, ax = plt.subplots(figsize=(6, 3.6))
    counts = Counter(ledger.final.values())
    xs = sorted(counts)
    ax.bar([float(x) for x in xs], [counts[x] for x in xs], width=0.04, color="#4477aa")
    t = THRESHOLDS[ledger.family]
    ax.axvline(float(t), color="#cc3311", linestyle="--", linewidth=1)
    ax.text(float(t), ax.get_ylim()[1] * 0.95, f" {t.numerator}/{t.denominator}", color="#cc3311", va="top")
    ax.set_xlabel("final charge")
    ax.set_ylabel("vertices")
    ax.set_title(title or f"{ledger.family} discharging, bank {ledger.bank}")
    return _finish(fig, ax, path)


def plot_extremal(records: Sequence[ExtremalRecord], path: str | Path, target: int) -> Path:
    """Mad against order for every graph with star chromatic number above ``target``."""
    fig, ax = plt.subplots(figsize=(6, 4))
    by_chi: dict[str, list[ExtremalRecord]] = {}
    for r in records:
        key = f">{r.star_chromatic - 1}" if r.capped else str(r.star_chromatic)
        by_chi.setdefault(key, []).append(r)
    for key in sorted(by_chi):
        rs = by_chi[key]
        ax.scatter([r.graph.order() for r in rs], [float(r.mad) for r in rs], s=10, alpha=0.6, label=f"chi_s = {key}")
    for label, value in REFERENCE_LINES.items():
        ax.axhline(float(value), color="grey", linewidth=0.6, linestyle=":")
        ax.text(ax.get_xlim()[0], float(value), f" {label}", fontsize=7, va="bottom", color="grey")
    ax.set_xlabel("vertices")
    ax.set_ylabel("Mad")
    ax.set_title(f"graphs with chi_s > {target}")
    if by_chi:
        ax.legend(fontsize=7, frameon=False)
    return _finish(fig, ax, path)
