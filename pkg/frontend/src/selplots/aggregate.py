"""Turn benchmark sweep CSV rows into per-group plot series.

The input is the CSV written by the benchmark harness: one row per
(algorithm, error fraction, trial). Rows are grouped by
(dataset, weight_model, decision_model); each group becomes one figure.
"""
from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from typing import Dict, List, Tuple

REQUIRED_FIELDS = (
    "dataset",
    "weight_model",
    "decision_model",
    "algorithm",
    "parameters",
    "target_error_fraction",
    "achieved_eta",
    "eta_max",
    "trial",
    "seed",
    "alg_value",
    "opt_value",
    "ratio",
)

STATISTICS = {
    "mean": statistics.fmean,
    "median": statistics.median,
}


class SchemaError(ValueError):
    """The CSV does not match the harness output schema."""


GroupKey = Tuple[str, str, str]  # (dataset, weight_model, decision_model)


@dataclass(frozen=True)
class GroupSeries:
    key: GroupKey
    opt_value: float
    # algorithm label -> [(error fraction, aggregated alg_value), ...] sorted by x
    series: Dict[str, List[Tuple[float, float]]]


def read_rows(stream) -> List[dict]:
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise SchemaError("empty CSV: no header row")
    missing = [f for f in REQUIRED_FIELDS if f not in reader.fieldnames]
    if missing:
        raise SchemaError(f"CSV is missing required columns: {', '.join(missing)}")
    rows = list(reader)
    if not rows:
        raise SchemaError("CSV has a header but no data rows")
    return rows


def _achieved_fraction(row: dict) -> float:
    eta_max = float(row["eta_max"])
    if eta_max == 0.0:
        return 0.0
    return float(row["achieved_eta"]) / eta_max


def _bucket(x: float, grid: List[float]) -> float:
    # corruption overshoots its target, so snap the achieved fraction back to
    # the nearest configured target value
    return min(grid, key=lambda g: (abs(g - x), g))


def aggregate(rows: List[dict], stat: str) -> List[GroupSeries]:
    """Group rows and reduce trials to one y value per (algorithm, x bucket)."""
    if stat not in STATISTICS:
        raise ValueError(f"stat must be one of {sorted(STATISTICS)}, got {stat!r}")
    reduce = STATISTICS[stat]

    grouped: Dict[GroupKey, List[dict]] = {}
    for row in rows:
        key = (row["dataset"], row["weight_model"], row["decision_model"])
        grouped.setdefault(key, []).append(row)

    result = []
    for key in sorted(grouped):
        group = grouped[key]
        grid = sorted({float(r["target_error_fraction"]) for r in group})
        buckets: Dict[str, Dict[float, List[float]]] = {}
        for row in group:
            label = row["algorithm"]
            if row["parameters"]:
                label = f"{label}({row['parameters']})"
            x = _bucket(_achieved_fraction(row), grid)
            buckets.setdefault(label, {}).setdefault(x, []).append(float(row["alg_value"]))
        series = {
            label: sorted((x, reduce(ys)) for x, ys in points.items())
            for label, points in buckets.items()
        }
        opt_value = float(group[0]["opt_value"])
        result.append(GroupSeries(key, opt_value, series))
    return result
