"""Figures for evaluation reports.

All functions write straight to a file and close the figure, so they are safe
to call from the CLI with no display attached.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .evaluation import METHOD_TITLES, EvalReport  # noqa: E402
from .similarity import SimilarityMatrix, exclude_self, most_similar  # noqa: E402

RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def _annotate(ax, scores, fmt="{:.2f}"):
    n = scores.shape[0]
    for i in range(n):
        for j in range(n):
            ax.text(j, i, fmt.format(scores[i, j]), ha="center", va="center", fontsize=7)


def _heatmap(ax, scores, labels, title):
    ax.imshow(scores, cmap="Blues", vmin=0.0, vmax=1.0)
    ax.set_xticks(range(len(labels)), labels)
    ax.set_yticks(range(len(labels)), labels)
    ax.set_title(title)
    if len(labels) <= 12:
        _annotate(ax, scores)


def plot_neighbor_protocol(
    matrix: SimilarityMatrix, path: str | Path, n_show: int = 5, doc_labels: Sequence[str] | None = None
) -> Path:
    """Similarity matrix of the first ``n_show`` documents, shown three ways:
    as computed, with self-similarity zeroed, and with each row's best match
    outlined. The first panel is omitted if ``matrix`` is already self-excluded.
    """
    n_show = min(n_show, matrix.n)
    sub = SimilarityMatrix(matrix.scores[:n_show, :n_show].copy(), matrix.method, matrix.self_excluded)
    names = [f"D{i + 1}" for i in range(n_show)]
    if doc_labels is not None:
        names = [f"{nm}\n{lab}" for nm, lab in zip(names, doc_labels[:n_show])]
    excluded = exclude_self(sub)

    panels = [] if matrix.self_excluded else [("computed", sub.scores)]
    panels += [("diagonal zeroed", excluded.scores), ("best match", excluded.scores)]
    with plt.rc_context(RC):
        fig, axes = plt.subplots(1, len(panels), figsize=(3.2 * len(panels), 3.4))
        for ax, (title, scores) in zip(np.atleast_1d(axes), panels):
            _heatmap(ax, scores, names, title)
        ax = np.atleast_1d(axes)[-1]
        if n_show >= 2:
            for i in range(n_show):
                j, _ = most_similar(excluded, i)
                ax.add_patch(plt.Rectangle((j - 0.5, i - 0.5), 1, 1, fill=False, lw=2, ec="tab:red"))
        fig.suptitle(METHOD_TITLES.get(matrix.method, matrix.method))
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_accuracy(reports: Sequence[EvalReport], path: str | Path) -> Path:
    """Overall and per-class top-1 accuracy, grouped by method."""
    classes = sorted({c for r in reports for c in r.per_class})
    groups = ["all", *classes]
    width = 0.8 / max(len(reports), 1)
    x = np.arange(len(groups))
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(1.2 * len(groups) + 3, 3.2))
        for k, r in enumerate(reports):
            vals = [r.accuracy] + [
                100.0 * r.per_class[c][1] / r.per_class[c][0] if c in r.per_class else 0.0
                for c in classes
            ]
            bars = ax.bar(x + (k - (len(reports) - 1) / 2) * width, vals, width, label=r.method)
            ax.bar_label(bars, fmt="%.1f", fontsize=6, padding=1)
        ax.set_xticks(x, groups)
        ax.set_ylim(0, 105)
        ax.set_ylabel("top-1 accuracy (%)")
        ax.legend(frameon=False, fontsize=7, loc="lower right")
        fig.savefig(path)
        plt.close(fig)
    return Path(path)
