"""Matplotlib rendering of experiment figures.

Output must be byte-reproducible: the SVG id hash salt is pinned and no
date metadata is embedded, so rendering the same curves twice yields
identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

plt.rcParams["svg.hashsalt"] = "linkquery"

Curve = tuple[str, Sequence[tuple[int, float]]]


def render_discovery_curves(
    curves: Iterable[Curve],
    path: str | Path,
    title: str = "Links discovered per query budget",
) -> None:
    """Plot one mean discovery curve per strategy and save the figure.

    ``curves`` holds (label, [(q, mean links), ...]) entries; the file
    format follows the path suffix.
    """
    path = Path(path)
    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    for label, points in curves:
        xs = [q for q, _ in points]
        ys = [m for _, m in points]
        ax.plot(xs, ys, label=label, linewidth=1.5)
    ax.set_xlabel("link queries")
    ax.set_ylabel("links discovered")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    metadata = {"Date": None} if path.suffix.lower() == ".svg" else None
    fig.savefig(path, metadata=metadata)
    plt.close(fig)
