"""Figure rendering for reports: quiver diagrams and exchange graphs.

Layouts are deterministic (no randomized embeddings) so repeated runs of the
same command produce identical figures.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cluster import ExchangeGraph
from .quiver import IceQuiver


def _circle_layout(keys):
    n = len(keys)
    pos = {}
    for k, key in enumerate(sorted(keys)):
        ang = math.pi / 2 - 2 * math.pi * k / max(n, 1)
        pos[key] = (math.cos(ang), math.sin(ang))
    return pos


def draw_quiver(q: IceQuiver, path: str | Path, title: str = "") -> Path:
    """Render an ice quiver to a file; frozen vertices are drawn as squares."""
    pos = _circle_layout(q.vertex_ids)
    fig, ax = plt.subplots(figsize=(6, 6))
    multi: dict[tuple[int, int], int] = {}
    for a in q.arrows:
        multi[(a.source, a.target)] = multi.get((a.source, a.target), 0) + 1
    seen: dict[tuple[int, int], int] = {}
    for a in q.arrows:
        x1, y1 = pos[a.source]
        x2, y2 = pos[a.target]
        k = seen.get((a.source, a.target), 0)
        seen[(a.source, a.target)] = k + 1
        total = multi[(a.source, a.target)] + multi.get((a.target, a.source), 0)
        rad = 0.0 if total == 1 else 0.15 + 0.2 * k
        style = "--" if a.id in q.frozen_arrows else "-"
        ax.annotate(
            "",
            xy=(x2, y2),
            xytext=(x1, y1),
            arrowprops=dict(
                arrowstyle="-|>",
                linestyle=style,
                color="0.3",
                shrinkA=14,
                shrinkB=14,
                connectionstyle=f"arc3,rad={rad}",
            ),
        )
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        ax.text(
            mx + rad * (y1 - y2) * 0.6,
            my + rad * (x2 - x1) * 0.6,
            a.id,
            fontsize=8,
            ha="center",
            color="0.25",
        )
    for v in q.vertices:
        x, y = pos[v.id]
        frozen = v.id in q.frozen_vertices
        marker = "s" if frozen else "o"
        ax.plot([x], [y], marker, markersize=22, color="#dbe9f6" if frozen else "#f6e7db",
                markeredgecolor="0.2")
        ax.text(x, y, v.label, ha="center", va="center", fontsize=9)
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_exchange_graph(graph: ExchangeGraph, path: str | Path, title: str = "") -> Path:
    """Render the exchange graph with nodes on a circle in discovery order."""
    n = len(graph.seeds)
    pos = _circle_layout(range(n))
    fig, ax = plt.subplots(figsize=(6, 6))
    for i, j in graph.edges:
        x1, y1 = pos[i]
        x2, y2 = pos[j]
        ax.plot([x1, x2], [y1, y2], "-", color="0.6", zorder=1)
    for i in range(n):
        x, y = pos[i]
        ax.plot([x], [y], "o", markersize=16, color="#e4f0e2", markeredgecolor="0.2", zorder=2)
        ax.text(x, y, str(i), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_title(title or f"{n} seeds, {len(graph.edges)} edges")
    ax.set_aspect("equal")
    ax.axis("off")
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
