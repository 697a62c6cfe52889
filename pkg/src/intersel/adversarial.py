"""Tight lower-bound fixtures with exact closed-form expectations.

Each generator packages an instance, its arrival order, its predictions, and
the exact quantities the construction forces, so tests can assert equalities
rather than inequalities. The adaptive constructions are emitted as two
oblivious fixtures, one per branch of the adversary's first response.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .core import Instance, Interval, WeightModel
from .predictions import PredictionVector


@dataclass(frozen=True)
class AdversarialFixture:
    instance: Instance
    arrival_order: Tuple[int, ...]
    preds: PredictionVector
    expected: Dict[str, float]


def gen_theorem2(m: int, branch: str = "accept") -> AdversarialFixture:
    """Unit-weight construction: a big interval with prediction 0 covering two
    disjoint predicted/unpredicted intervals. Any greedy accepter of the big
    interval ends at OPT - eta.

    branch="reject" emits the truncated variant (only the big intervals),
    where a prediction-following policy ends with nothing.
    """
    if m < 1:
        raise ValueError("need at least one copy")
    if branch not in ("accept", "reject"):
        raise ValueError("branch must be 'accept' or 'reject'")
    intervals = []
    bits = []
    for c in range(m):
        t = 20.0 * c
        if branch == "accept":
            base = len(intervals)
            intervals.append(Interval(base, t, t + 16.0))  # I_big
            intervals.append(Interval(base + 1, t + 2.0, t + 7.0))  # I_1
            intervals.append(Interval(base + 2, t + 8.0, t + 13.0))  # I_2
            bits += [0, 0, 1]
        else:
            intervals.append(Interval(len(intervals), t, t + 16.0))
            bits.append(0)
    instance = Instance(intervals, WeightModel.UNIT)
    if branch == "accept":
        expected = {"opt": 2.0 * m, "eta": 1.0 * m, "alg:grnr": 1.0 * m}
    else:
        expected = {"opt": 1.0 * m, "eta": 1.0 * m, "alg:naive": 0.0}
    return AdversarialFixture(
        instance, tuple(range(len(intervals))), PredictionVector(tuple(bits)), expected
    )


def gen_theorem4(m: int, base: float = 1.0, branch: str = "accept") -> AdversarialFixture:
    """Proportional-weight construction: a middle interval of weight w arrives
    first with prediction 0; two disjoint intervals of weight w and 2w then
    straddle it. Accepting the first interval caps the policy at w per copy.
    """
    if m < 1:
        raise ValueError("need at least one copy")
    if base <= 0:
        raise ValueError("base weight must be positive")
    if branch not in ("accept", "reject"):
        raise ValueError("branch must be 'accept' or 'reject'")
    w = float(base)
    intervals = []
    bits = []
    for c in range(m):
        t = (3.0 * w + 1.0) * c
        if branch == "accept":
            i = len(intervals)
            intervals.append(Interval(i, t + w / 2.0, t + 1.5 * w))  # I_1, weight w
            intervals.append(Interval(i + 1, t, t + w))  # I_2, weight w
            intervals.append(Interval(i + 2, t + w, t + 3.0 * w))  # I_3, weight 2w
            bits += [0, 1, 0]
        else:
            intervals.append(Interval(len(intervals), t + w / 2.0, t + 1.5 * w))
            bits.append(0)
    instance = Instance(intervals, WeightModel.PROPORTIONAL)
    if branch == "accept":
        expected = {"opt": 3.0 * w * m, "eta": 2.0 * w * m, "alg:grnr": w * m}
    else:
        expected = {"opt": w * m, "eta": w * m, "alg:naive": 0.0}
    return AdversarialFixture(
        instance, tuple(range(len(intervals))), PredictionVector(tuple(bits)), expected
    )


def gen_alpha_lb(alpha: float, eps: float, base_weight: float = 10.0) -> AdversarialFixture:
    """Consistency bound for alpha-increasing policies: after the first interval
    is accepted, two flanking intervals of weight alpha*w - eps and a nested
    interval of weight w - 2*eps arrive, none large enough to displace it.
    """
    w1 = float(base_weight)
    flank = alpha * w1 - eps
    if alpha < 1.0 or eps <= 0.0:
        raise ValueError("need alpha >= 1 and eps > 0")
    if flank <= 0.0 or w1 - 2.0 * eps <= 0.0:
        raise ValueError("parameters leave a non-positive interval weight")
    if flank <= eps:
        raise ValueError("flanking intervals would be subsumed, not partial")
    intervals = [
        Interval(0, 0.0, w1),  # I_1
        Interval(1, eps - flank, eps),  # I_2, partial on the left
        Interval(2, w1 - eps, w1 - eps + flank),  # I_3, partial on the right
        Interval(3, eps, w1 - eps),  # I_4, nested in I_1
    ]
    instance = Instance(intervals, WeightModel.PROPORTIONAL)
    preds = PredictionVector((0, 1, 1, 1))  # perfect: optimum is {I_2, I_3, I_4}
    expected = {
        "opt": 2.0 * flank + (w1 - 2.0 * eps),
        "eta": 0.0,
        "alg:lr": w1,
        "ratio:lr": (2.0 * alpha + 1.0) - 4.0 * eps / w1,
    }
    return AdversarialFixture(instance, (0, 1, 2, 3), preds, expected)
