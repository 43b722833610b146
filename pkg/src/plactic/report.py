"""Figures for the cell-count table."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .coherence import CellCountReport  # noqa: E402

SERIES = [
    ("colo1", "Col1"),
    ("knuth2", "Knuth2"),
    ("colo2", "Col2"),
    ("knuth3", "Knuth3"),
    ("bar_colo3", "bar-Col3"),
    ("colo3", "Col3"),
]


def plot_counts(reports: Sequence[CellCountReport], path: str) -> str:
    """Log-scale plot of cell counts against n, written to ``path``."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ns = [r.n for r in reports]
    for key, label in SERIES:
        pts = [(r.n, r.counts[key]) for r in reports if r.counts.get(key)]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, ys, marker="o", label=label)
    ax.set_yscale("log")
    ax.set_xlabel("rank n")
    ax.set_ylabel("number of cells")
    ax.set_xticks(ns)
    ax.grid(True, which="major", alpha=0.3)
    ax.legend(loc="upper left", fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
