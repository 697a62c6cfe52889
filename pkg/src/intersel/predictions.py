"""Binary optimality predictions, the error measure, and controlled corruption."""
from __future__ import annotations

import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .core import Instance
from .offline import CanonicalSolution

# Forgives float round-off when checking that a false positive's conflicting
# optimal weight is at least its own weight; genuine negatives still raise.
_NEGATIVE_ERROR_SLACK = 1e-9


@dataclass(frozen=True)
class PredictionVector:
    """Per-interval binary hints, indexed by interval id."""

    bits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("prediction bits must be 0 or 1")

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def complement(self) -> "PredictionVector":
        return PredictionVector(tuple(1 - b for b in self.bits))


@dataclass(frozen=True)
class ErrorReport:
    per_interval: Tuple[float, ...]
    total: float
    max_possible: float


def perfect_predictions(instance: Instance, opt: CanonicalSolution) -> PredictionVector:
    """All-accurate predictions: bit i set iff interval i is in the canonical optimum."""
    if opt.member_ids and max(opt.member_ids) >= len(instance):
        raise ValueError("canonical solution does not match instance size")
    members = opt.member_ids
    return PredictionVector(tuple(1 if i in members else 0 for i in range(len(instance))))


class ErrorModel:
    """Precomputed per-interval flip costs against one canonical optimum.

    The error contribution of interval i depends only on its own bit and the
    fixed optimum, so the cost of flipping a bit is a constant. This makes
    total error separable and lets corruption run in O(n log n) once built.
    """

    def __init__(self, instance: Instance, opt: CanonicalSolution):
        self.instance = instance
        self.opt = opt
        self.perfect = perfect_predictions(instance, opt)
        members = sorted(opt.member_ids, key=lambda i: instance.starts[i])
        self._opt_starts = [instance.starts[i] for i in members]
        self._opt_finishes = [instance.finishes[i] for i in members]
        self._opt_weights = [instance.weights[i] for i in members]
        self.flip_costs = [self._flip_cost(i) for i in range(len(instance))]
        self.eta_max = 0.0
        for c in self.flip_costs:
            self.eta_max += c

    def _conflicting_opt_weight(self, i: int) -> float:
        # Optimal members are disjoint, so overlappers form a contiguous range.
        lo = bisect_right(self._opt_finishes, self.instance.starts[i])
        hi = bisect_left(self._opt_starts, self.instance.finishes[i])
        total = 0.0
        for j in range(lo, hi):
            total += self._opt_weights[j]
        return total

    def _flip_cost(self, i: int) -> float:
        w = self.instance.weights[i]
        if i in self.opt.member_ids:
            return w  # false negative: a missed optimal interval costs its weight
        conflict_weight = self._conflicting_opt_weight(i)
        if conflict_weight == 0.0:
            raise ValueError(
                f"interval {i} conflicts with no optimal interval; the supplied "
                f"solution cannot be optimal"
            )
        cost = conflict_weight - w
        if cost < 0.0:
            if cost < -_NEGATIVE_ERROR_SLACK:
                raise ValueError(
                    f"interval {i} outweighs its conflicting optimal intervals; "
                    f"the supplied solution cannot be optimal"
                )
            cost = 0.0
        return cost

    def report(self, preds: PredictionVector) -> ErrorReport:
        if len(preds) != len(self.instance):
            raise ValueError("prediction vector length does not match instance")
        perfect = self.perfect.bits
        per = tuple(
            self.flip_costs[i] if preds.bits[i] != perfect[i] else 0.0
            for i in range(len(self.instance))
        )
        total = 0.0
        for v in per:
            total += v
        return ErrorReport(per, total, self.eta_max)

    def corrupt(self, target_fraction: float, seed: int) -> Tuple[PredictionVector, ErrorReport]:
        """Flip bits of the perfect vector in seeded random order until the
        accumulated error first reaches target_fraction * eta_max."""
        if not 0.0 <= target_fraction <= 1.0:
            raise ValueError("target_fraction must lie in [0, 1]")
        n = len(self.instance)
        bits = list(self.perfect.bits)
        if target_fraction == 1.0:
            # Stated endpoint semantics: full complement, even when some
            # remaining flips would contribute zero error.
            flipped: Sequence[int] = range(n)
        else:
            order = list(range(n))
            random.Random(seed).shuffle(order)
            target = target_fraction * self.eta_max
            accumulated = 0.0
            flipped = []
            for i in order:
                if accumulated >= target:
                    break
                flipped.append(i)
                accumulated += self.flip_costs[i]
        for i in flipped:
            bits[i] = 1 - bits[i]
        corrupted = PredictionVector(tuple(bits))
        return corrupted, self.report(corrupted)


def interval_error(
    instance: Instance, i: int, preds: PredictionVector, opt: CanonicalSolution
) -> float:
    """Error contribution of interval i: 0 if accurate, w(i) for a missed
    optimal interval, conflicting-optimal weight minus w(i) for a false flag."""
    model = ErrorModel(instance, opt)
    return model.report(preds).per_interval[i]


def total_error(
    instance: Instance, preds: PredictionVector, opt: CanonicalSolution
) -> ErrorReport:
    return ErrorModel(instance, opt).report(preds)


def corrupt(
    preds: PredictionVector,
    instance: Instance,
    opt: CanonicalSolution,
    target_fraction: float,
    seed: int,
) -> Tuple[PredictionVector, ErrorReport]:
    model = ErrorModel(instance, opt)
    if preds.bits != model.perfect.bits:
        raise ValueError("corrupt starts from the perfect prediction vector")
    return model.corrupt(target_fraction, seed)
