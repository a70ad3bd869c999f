"""Figures for the analyze report: gray-level histograms and adjacent-pixel scatter."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGSIZE = (9, 3.6)


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return Path(path)


def histogram_figure(panels: dict[str, np.ndarray], path) -> Path:
    """One bar panel per named 256-bin histogram."""
    fig, axes = plt.subplots(1, len(panels), figsize=FIGSIZE, squeeze=False)
    for ax, (title, counts) in zip(axes[0], panels.items()):
        ax.bar(np.arange(256), counts, width=1.0, color="0.25")
        ax.set_xlim(0, 255)
        ax.set_title(title)
        ax.set_xlabel("gray value")
    axes[0][0].set_ylabel("count")
    return _save(fig, path)


def scatter_figure(panels: dict[str, np.ndarray], direction: str, path) -> Path:
    fig, axes = plt.subplots(1, len(panels), figsize=FIGSIZE, squeeze=False)
    for ax, (title, pairs) in zip(axes[0], panels.items()):
        pairs = np.asarray(pairs)
        ax.scatter(pairs[:, 0], pairs[:, 1], s=2, color="0.2")
        ax.set_xlim(0, 255)
        ax.set_ylim(0, 255)
        ax.set_aspect("equal")
        ax.set_title(title)
        ax.set_xlabel("pixel (x, y)")
    axes[0][0].set_ylabel(f"{direction} neighbour")
    return _save(fig, path)
