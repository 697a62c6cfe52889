"""Exact offline optima: greedy (unit), DP (weighted), and a brute-force oracle."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import FrozenSet

from .core import Instance, WeightModel

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class CanonicalSolution:
    """One fixed optimal solution per instance, used as ground truth elsewhere.

    Tie-breaking in the solvers is deterministic, so the same instance always
    yields the same member set regardless of how it was assembled.
    """

    member_ids: FrozenSet[int]
    value: float


def _canonical_order(instance: Instance):
    return sorted(
        range(len(instance)),
        key=lambda i: (instance.finishes[i], instance.starts[i], i),
    )


def opt_unit(instance: Instance) -> CanonicalSolution:
    """Maximum-cardinality disjoint subset via earliest-finish-time greedy."""
    if instance.weight_model is not WeightModel.UNIT:
        raise ValueError("opt_unit requires the unit weight model")
    chosen = []
    frontier = float("-inf")
    for i in _canonical_order(instance):
        if instance.starts[i] >= frontier:
            chosen.append(i)
            frontier = instance.finishes[i]
    return CanonicalSolution(frozenset(chosen), float(len(chosen)))


def opt_weighted(instance: Instance) -> CanonicalSolution:
    """Maximum-weight disjoint subset via the classic DP over finish-sorted intervals.

    Backtracking prefers excluding the current interval on exact value ties,
    which pins down a single canonical member set.
    """
    order = _canonical_order(instance)
    n = len(order)
    finishes = [instance.finishes[i] for i in order]
    weights = instance.weights
    starts = instance.starts
    # pred[j]: number of intervals (in sorted order) finishing at or before start of j
    pred = [bisect_right(finishes, starts[order[j]]) for j in range(n)]
    best = [0.0] * (n + 1)
    for j in range(n):
        take = weights[order[j]] + best[pred[j]]
        best[j + 1] = take if take > best[j] else best[j]
    chosen = []
    j = n
    while j > 0:
        if best[j] == best[j - 1]:
            j -= 1
        else:
            chosen.append(order[j - 1])
            j = pred[j - 1]
    return CanonicalSolution(frozenset(chosen), best[n])


def brute_force_opt(instance: Instance) -> float:
    """Exhaustive maximum over all pairwise-disjoint subsets. Verification only."""
    n = len(instance)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute_force_opt is limited to n <= {BRUTE_FORCE_LIMIT} (got {n})"
        )
    intervals = instance.intervals
    weights = instance.weights
    conflict_mask = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and intervals[i].start < intervals[j].finish and intervals[j].start < intervals[i].finish:
                conflict_mask[i] |= 1 << j

    best = 0.0

    def recurse(i: int, taken: int, weight: float) -> None:
        nonlocal best
        if i == n:
            if weight > best:
                best = weight
            return
        recurse(i + 1, taken, weight)
        if not conflict_mask[i] & taken:
            recurse(i + 1, taken | (1 << i), weight + weights[i])

    recurse(0, 0, 0.0)
    return best
