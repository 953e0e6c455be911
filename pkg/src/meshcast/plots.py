"""Figure rendering for experiment reports.

Renders grouped bar charts of tree length and interference per request, one
file per metric, next to the delimited output. Uses the Agg backend so the
CLI works headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import ResultTable

_COLORS = {"tssr": "#2c7fb8", "spt": "#fdae61", "st": "#d7191c", "exact": "#5aae61"}


def _grouped_bars(ax, table: ResultTable, metric: str):
    request_ids = list(dict.fromkeys(row.request_id for row in table.rows))
    algorithms = list(dict.fromkeys(row.algorithm for row in table.rows))
    width = 0.8 / max(len(algorithms), 1)
    for k, algo in enumerate(algorithms):
        xs, ys = [], []
        for i, rid in enumerate(request_ids):
            try:
                row = table.row(rid, algo)
            except KeyError:
                continue
            value = getattr(row, metric)
            if value is None:
                continue
            xs.append(i + (k - (len(algorithms) - 1) / 2) * width)
            ys.append(value)
        ax.bar(xs, ys, width=width, label=algo.upper(), color=_COLORS.get(algo))
    ax.set_xticks(range(len(request_ids)))
    ax.set_xticklabels(request_ids, rotation=45 if len(request_ids) > 8 else 0)
    ax.set_xlabel("request")
    ax.set_ylabel(metric.replace("_", " "))
    ax.legend()
    ax.grid(axis="y", alpha=0.3)


def render_result_figures(table: ResultTable, out_dir) -> list[str]:
    """Write length.png and interference.png; returns the file paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for metric, fname in (("length", "length.png"), ("interference", "interference.png")):
        fig, ax = plt.subplots(figsize=(7, 4))
        _grouped_bars(ax, table, metric)
        fig.tight_layout()
        path = os.path.join(out_dir, fname)
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written


def render_graph_figure(g, out_path) -> str:
    """Draw the mesh itself when node coordinates are available."""
    fig, ax = plt.subplots(figsize=(6, 6))
    for u, v, _ in g.edges():
        cu, cv = g.coords_of(u), g.coords_of(v)
        if cu is None or cv is None:
            continue
        ax.plot([cu[0], cv[0]], [cu[1], cv[1]], color="#999999", zorder=1)
    for node_id in g.node_ids():
        coords = g.coords_of(node_id)
        if coords is None:
            continue
        function = g.function_of(node_id)
        ax.scatter(*coords, s=240, color="#2c7fb8" if function else "#cccccc", zorder=2)
        label = f"{node_id}\n{function}" if function else node_id
        ax.annotate(label, coords, ha="center", va="center", fontsize=7, zorder=3)
    ax.set_aspect("equal")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return str(out_path)
