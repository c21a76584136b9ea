"""File outputs: deterministic JSON and CSV, plus rendered figures.

JSON is sorted-key, indented, newline-terminated; CSV rows are written
in the order given.  Figures are rendered with the Agg backend so no
display is needed; they are a visual companion to the delimited output,
never the primary record.
"""

from __future__ import annotations

import csv
import json
import math
import os


def write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def write_csv(rows, path, header) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def entropy_csv(summary: dict, path) -> None:
    rows = [
        (e["n"], e["window_size"], e["count"], f"{e['estimate']:.12g}", e["method"])
        for e in summary["series"]
    ]
    write_csv(rows, path, ("n", "window_size", "count", "estimate", "method"))


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def entropy_figure(summary: dict, path, reference: float | None = None) -> None:
    """Estimate series with the summary value and an optional oracle line."""
    plt = _plt()
    ns = [e["n"] for e in summary["series"]]
    ests = [e["estimate"] for e in summary["series"]]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ns, ests, "o-", label="ln(count) / window size")
    ax.axhline(summary["summary_value"], linestyle="--", color="C1",
               label=f"summary ({summary['summary_method']})")
    if reference is not None and math.isfinite(reference):
        ax.axhline(reference, linestyle=":", color="C2", label="matrix oracle")
    ax.set_xlabel("window index n")
    ax.set_ylabel("entropy estimate")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=144)
    plt.close(fig)


def core_figure(ball, core_indices, path, title: str = "") -> None:
    """Circular drawing of a cell core with its action edges."""
    from .cayley import element_label

    plt = _plt()
    core = list(core_indices)
    pos = {}
    m = len(core)
    for k, idx in enumerate(core):
        ang = 2 * math.pi * k / max(m, 1)
        pos[idx] = (math.cos(ang), math.sin(ang))
    names = ball.sg.presentation.gens.names
    fig, ax = plt.subplots(figsize=(5.4, 5.4))
    in_core = set(core)
    for src, gen, tgt in ball.positive_edges():
        if src in in_core and tgt in in_core:
            x0, y0 = pos[src]
            x1, y1 = pos[tgt]
            ax.annotate(
                "", xy=(x1, y1), xytext=(x0, y0),
                arrowprops={"arrowstyle": "-|>", "color": f"C{gen % 10}",
                            "shrinkA": 16, "shrinkB": 16},
            )
            ax.text((x0 + x1) / 2, (y0 + y1) / 2, names[gen],
                    color=f"C{gen % 10}", fontsize=11,
                    ha="center", va="center")
    for idx in core:
        x, y = pos[idx]
        ax.plot([x], [y], "o", markersize=26, color="lightgray",
                markeredgecolor="black", zorder=3)
        ax.text(x, y, element_label(ball, idx), fontsize=8,
                ha="center", va="center", zorder=4)
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=144)
    plt.close(fig)


def ensure_dir(path) -> str:
    os.makedirs(path, exist_ok=True)
    return path
