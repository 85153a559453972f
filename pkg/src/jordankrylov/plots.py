"""Figure rendering for bench reports.

Figures go to files next to the CSV; the Agg backend is forced so this works
headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_PHASE_COLUMNS = ("f1A", "annihpol", "krylovgs", "preprocessing", "jkelim", "total")


def render_bench_figure(rows: Sequence[dict], path: str | Path) -> Path:
    """One line of total seconds versus matrix size per (variant, preprocess)
    combination, log scale on both axes when sizes vary."""
    path = Path(path)
    series: dict[tuple[str, str], list[tuple[int, float]]] = {}
    for row in rows:
        if row.get("total") in (None, "NA"):
            continue
        key = (row["variant"], row["preprocess"])
        series.setdefault(key, []).append((int(row["n"]), float(row["total"])))
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for (variant, preprocess), points in sorted(series.items()):
        points.sort()
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        style = "-" if preprocess == "on" else "--"
        ax.plot(xs, ys, style, marker="o", label=f"{variant}, preprocess {preprocess}")
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("total seconds")
    if series and len({x for pts in series.values() for x, _ in pts}) > 1:
        ax.set_xscale("log")
        ax.set_yscale("log")
    family = rows[0]["family"] if rows else ""
    ax.set_title(f"structure computation time, family {family}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_phase_figure(rows: Sequence[dict], path: str | Path) -> Path:
    """Per-phase breakdown for one (variant, preprocess) series per subplot."""
    path = Path(path)
    keys = sorted({(r["variant"], r["preprocess"]) for r in rows})
    fig, axes = plt.subplots(1, max(len(keys), 1), figsize=(4.0 * max(len(keys), 1), 3.6), squeeze=False)
    for ax, key in zip(axes[0], keys):
        sub = sorted(
            (r for r in rows if (r["variant"], r["preprocess"]) == key),
            key=lambda r: int(r["n"]),
        )
        xs = [int(r["n"]) for r in sub]
        for phase in _PHASE_COLUMNS[:-1]:
            ys = [float(r[phase]) if r[phase] not in (None, "NA") else None for r in sub]
            if all(y is None for y in ys):
                continue
            ax.plot(xs, [y if y is not None else float("nan") for y in ys], marker=".", label=phase)
        ax.set_title(f"{key[0]}, preprocess {key[1]}", fontsize=8)
        ax.set_xlabel("n")
        ax.set_ylabel("seconds")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
