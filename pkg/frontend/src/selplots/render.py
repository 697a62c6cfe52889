"""Render one line chart per (dataset, weight model, decision model) group."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .aggregate import GroupSeries, aggregate, read_rows


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    out_dir: str
    stat: str = "mean"
    fmt: str = "png"


def _figure_path(spec: PlotSpec, group: GroupSeries) -> str:
    dataset, weight, model = group.key
    return os.path.join(spec.out_dir, f"{dataset}_{weight}_{model}.{spec.fmt}")


def _draw(group: GroupSeries, stat: str, path: str, fmt: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for label in sorted(group.series):
        points = group.series[label]
        ax.plot([p[0] for p in points], [p[1] for p in points],
                marker="o", markersize=3, linewidth=1.2, label=label)
    ax.axhline(group.opt_value, color="black", linestyle="--",
               linewidth=1.0, label="OPT")
    dataset, weight, model = group.key
    ax.set_title(f"{dataset}: {weight} weights, {model} decisions")
    ax.set_xlabel("error fraction (achieved / maximum)")
    ax.set_ylabel(f"{stat} selected weight")
    if weight == "proportional":
        ax.ticklabel_format(axis="y", style="sci", scilimits=(0, 0))
    ax.legend(fontsize=8)
    fig.tight_layout()
    # strip metadata so re-rendering is byte-identical
    fig.savefig(path, format=fmt, metadata={"Software": None})
    plt.close(fig)


def render(spec: PlotSpec) -> List[str]:
    """Render every group found in the CSV; returns the written file paths."""
    with open(spec.csv_path, newline="") as fh:
        rows = read_rows(fh)
    groups = aggregate(rows, spec.stat)
    os.makedirs(spec.out_dir, exist_ok=True)
    written = []
    for group in groups:
        path = _figure_path(spec, group)
        _draw(group, spec.stat, path, spec.fmt)
        written.append(path)
    return written
