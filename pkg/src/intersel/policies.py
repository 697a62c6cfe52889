"""Online selection policies as deterministic state machines with one step contract.

Every policy is split into a pure decision function (which reports whether the
arrival is accepted, under which rule, and which contiguous member range it
displaces) and a shared apply step that mutates the state. The traced runner
and the fast runner both go through the same decision functions, so the audit
trail can never disagree with the benchmark path.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .core import ConflictKind, Instance, Interval, SolutionState, WeightModel, classify_conflict
from .predictions import PredictionVector

PHI = (1.0 + math.sqrt(5.0)) / 2.0

RULE_NO_CONFLICT = "no-conflict"
RULE_PROPER_INCLUSION = "proper-inclusion"
RULE_PREDICTIONS = "predictions"
RULE_MAIN_THRESHOLD = "main-threshold"
RULE_REJECT = "reject"


class Algorithm(enum.Enum):
    NAIVE = "naive"
    GRNR = "grnr"
    BK2K = "bk2k"
    REVOKE_UNIT = "revoke-unit"
    LR = "lr"
    LR_PRIME = "lr-prime"
    REVOKE_PROP = "revoke-prop"
    REVOKE_PROP_HALF = "revoke-prop-half"


IRREVOCABLE = frozenset({Algorithm.NAIVE, Algorithm.GRNR})
PROPORTIONAL_ONLY = frozenset(
    {Algorithm.LR, Algorithm.LR_PRIME, Algorithm.REVOKE_PROP, Algorithm.REVOKE_PROP_HALF}
)


@dataclass(frozen=True)
class PolicyConfig:
    algorithm: Algorithm
    beta: float = PHI  # LR / LR' acceptance threshold
    lam: float = PHI  # trust parameter of the proportional revoking family
    mark_inheritance: bool = True  # disable for the 3k-robust Revoke-Unit variant

    def __post_init__(self) -> None:
        if self.algorithm in (Algorithm.REVOKE_PROP, Algorithm.REVOKE_PROP_HALF):
            if not self.lam > 1.0:
                raise ValueError("lambda must be > 1 for the revoke-proportional family")

    @property
    def prediction_threshold(self) -> float:
        return 0.5 if self.algorithm is Algorithm.REVOKE_PROP_HALF else 1.0

    @property
    def decision_model(self) -> str:
        return "irrevocable" if self.algorithm in IRREVOCABLE else "revocable"

    def label(self) -> str:
        name = self.algorithm.value
        if self.algorithm in (Algorithm.LR, Algorithm.LR_PRIME):
            return f"{name}(beta={self.beta:g})"
        if self.algorithm in (Algorithm.REVOKE_PROP, Algorithm.REVOKE_PROP_HALF):
            return f"{name}(lambda={self.lam:g})"
        return name


@dataclass
class PolicyState:
    solution: SolutionState
    marked: Set[int] = field(default_factory=set)
    accepted_prediction: Dict[int, int] = field(default_factory=dict)
    rejected: Set[int] = field(default_factory=set)


@dataclass(frozen=True)
class Decision:
    kind: str  # "accept" | "reject"
    displaced: Tuple[int, ...]
    rule: str


@dataclass(frozen=True)
class RunResult:
    final_value: float
    final_members: Tuple[int, ...]
    trace: Optional[Tuple[Decision, ...]]


# ---------------------------------------------------------------------------
# Decision functions: (accept?, rule, lo, hi) against the current solution.
# ---------------------------------------------------------------------------

def _decide_naive(sol: SolutionState, iv: Interval, prd: int):
    lo, hi = sol.conflict_range(iv.start, iv.finish)
    if prd == 1 and lo == hi:
        return True, RULE_PREDICTIONS, lo, lo
    return False, RULE_REJECT, lo, hi


def _decide_grnr(sol: SolutionState, iv: Interval):
    lo, hi = sol.conflict_range(iv.start, iv.finish)
    if lo == hi:
        return True, RULE_NO_CONFLICT, lo, lo
    return False, RULE_REJECT, lo, hi


def _properly_included(inner: Interval, outer_start: float, outer_finish: float) -> bool:
    # Strict nesting: containment with at least one strict endpoint, not equality.
    return (
        outer_start <= inner.start
        and inner.finish <= outer_finish
        and (outer_start < inner.start or inner.finish < outer_finish)
    )


def _decide_bk2k(sol: SolutionState, iv: Interval):
    lo, hi = sol.conflict_range(iv.start, iv.finish)
    if lo == hi:
        return True, RULE_NO_CONFLICT, lo, lo
    if hi - lo == 1 and _properly_included(
        iv, sol.member_starts[lo], sol.member_finishes[lo]
    ):
        return True, RULE_PROPER_INCLUSION, lo, hi
    return False, RULE_REJECT, lo, hi


def _all_partial(sol: SolutionState, iv: Interval, lo: int, hi: int) -> bool:
    for j in range(lo, hi):
        ms, mf = sol.member_starts[j], sol.member_finishes[j]
        if (ms <= iv.start and iv.finish <= mf) or (iv.start <= ms and mf <= iv.finish):
            return False  # containment-type conflict (incl. equal duplicates)
    return True


def _decide_revoke_unit(sol: SolutionState, iv: Interval, prd: int, marked: Set[int]):
    lo, hi = sol.conflict_range(iv.start, iv.finish)
    if lo == hi:
        return True, RULE_NO_CONFLICT, lo, lo
    if hi - lo == 1 and _properly_included(
        iv, sol.member_starts[lo], sol.member_finishes[lo]
    ):
        return True, RULE_PROPER_INCLUSION, lo, hi
    if prd == 1 and _all_partial(sol, iv, lo, hi):
        if not any(sol.ids[j] in marked for j in range(lo, hi)):
            return True, RULE_PREDICTIONS, lo, hi
    return False, RULE_REJECT, lo, hi


def _decide_lr(sol: SolutionState, iv: Interval, beta: float, use_sum: bool):
    lo, hi = sol.conflict_range(iv.start, iv.finish)
    weights = sol.instance.weights
    agg = 0.0
    if use_sum:
        for j in range(lo, hi):
            agg += weights[sol.ids[j]]
    else:
        for j in range(lo, hi):
            w = weights[sol.ids[j]]
            if w > agg:
                agg = w
    w_new = weights[iv.id]
    if w_new > beta * agg:
        rule = RULE_NO_CONFLICT if lo == hi else RULE_MAIN_THRESHOLD
        return True, rule, lo, hi
    return False, RULE_REJECT, lo, hi


def _decide_revoke_prop(
    sol: SolutionState,
    iv: Interval,
    prd: int,
    lam: float,
    theta: float,
    accepted_prediction: Dict[int, int],
):
    lo, hi = sol.conflict_range(iv.start, iv.finish)
    weights = sol.instance.weights
    w_c = 0.0
    for j in range(lo, hi):
        w_c += weights[sol.ids[j]]
    w_new = weights[iv.id]
    if w_new >= lam * w_c:
        rule = RULE_NO_CONFLICT if lo == hi else RULE_MAIN_THRESHOLD
        return True, rule, lo, hi
    if prd == 1 and w_new >= theta * w_c:
        if not any(accepted_prediction[sol.ids[j]] == 1 for j in range(lo, hi)):
            return True, RULE_PREDICTIONS, lo, hi
    return False, RULE_REJECT, lo, hi


# ---------------------------------------------------------------------------
# Shared mutation step and the public per-policy step functions.
# ---------------------------------------------------------------------------

def _apply(
    state: PolicyState,
    iv: Interval,
    prd: int,
    config: PolicyConfig,
    accepted: bool,
    rule: str,
    lo: int,
    hi: int,
) -> Tuple[int, ...]:
    if not accepted:
        state.rejected.add(iv.id)
        return ()
    algo = config.algorithm
    if algo is Algorithm.REVOKE_UNIT:
        if rule == RULE_PROPER_INCLUSION:
            if config.mark_inheritance and state.solution.ids[lo] in state.marked:
                state.marked.add(iv.id)
        elif rule == RULE_PREDICTIONS:
            state.marked.add(iv.id)
    elif algo in (Algorithm.REVOKE_PROP, Algorithm.REVOKE_PROP_HALF):
        state.accepted_prediction[iv.id] = prd
    displaced = state.solution.replace(lo, hi, iv)
    return tuple(displaced)


def naive_step(state: PolicyState, iv: Interval, prd: int) -> Decision:
    accepted, rule, lo, hi = _decide_naive(state.solution, iv, prd)
    displaced = _apply(state, iv, prd, PolicyConfig(Algorithm.NAIVE), accepted, rule, lo, hi)
    return Decision("accept" if accepted else "reject", displaced, rule)


def greedy_nr_step(state: PolicyState, iv: Interval) -> Decision:
    accepted, rule, lo, hi = _decide_grnr(state.solution, iv)
    displaced = _apply(state, iv, 0, PolicyConfig(Algorithm.GRNR), accepted, rule, lo, hi)
    return Decision("accept" if accepted else "reject", displaced, rule)


def bk2k_step(state: PolicyState, iv: Interval) -> Decision:
    accepted, rule, lo, hi = _decide_bk2k(state.solution, iv)
    displaced = _apply(state, iv, 0, PolicyConfig(Algorithm.BK2K), accepted, rule, lo, hi)
    return Decision("accept" if accepted else "reject", displaced, rule)


def revoke_unit_step(
    state: PolicyState, iv: Interval, prd: int, mark_inheritance: bool = True
) -> Decision:
    accepted, rule, lo, hi = _decide_revoke_unit(state.solution, iv, prd, state.marked)
    config = PolicyConfig(Algorithm.REVOKE_UNIT, mark_inheritance=mark_inheritance)
    displaced = _apply(state, iv, prd, config, accepted, rule, lo, hi)
    return Decision("accept" if accepted else "reject", displaced, rule)


def lr_step(state: PolicyState, iv: Interval, aggregate: str = "max", beta: float = PHI) -> Decision:
    if aggregate not in ("max", "sum"):
        raise ValueError("aggregate must be 'max' (LR) or 'sum' (LR')")
    accepted, rule, lo, hi = _decide_lr(state.solution, iv, beta, aggregate == "sum")
    algo = Algorithm.LR if aggregate == "max" else Algorithm.LR_PRIME
    displaced = _apply(state, iv, 0, PolicyConfig(algo, beta=beta), accepted, rule, lo, hi)
    return Decision("accept" if accepted else "reject", displaced, rule)


def revoke_prop_step(
    state: PolicyState, iv: Interval, prd: int, lam: float, theta: float = 1.0
) -> Decision:
    if theta not in (1.0, 0.5):
        raise ValueError("theta must be 1 (revoke-prop) or 0.5 (revoke-prop-half)")
    accepted, rule, lo, hi = _decide_revoke_prop(
        state.solution, iv, prd, lam, theta, state.accepted_prediction
    )
    algo = Algorithm.REVOKE_PROP if theta == 1.0 else Algorithm.REVOKE_PROP_HALF
    displaced = _apply(state, iv, prd, PolicyConfig(algo, lam=lam), accepted, rule, lo, hi)
    return Decision("accept" if accepted else "reject", displaced, rule)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

def _validate_run(instance: Instance, arrival_order: Sequence[int], preds: PredictionVector,
                  config: PolicyConfig) -> None:
    n = len(instance)
    if len(arrival_order) != n or sorted(arrival_order) != list(range(n)):
        raise ValueError("arrival_order must be a permutation of 0..n-1")
    if len(preds) != n:
        raise ValueError("prediction vector length does not match instance")
    if config.algorithm in PROPORTIONAL_ONLY and instance.weight_model is not WeightModel.PROPORTIONAL:
        raise ValueError(f"{config.algorithm.value} requires the proportional weight model")


def run_policy(
    instance: Instance,
    arrival_order: Sequence[int],
    preds: PredictionVector,
    config: PolicyConfig,
    collect_trace: bool = True,
) -> RunResult:
    """Replay the arrival sequence through the configured policy.

    With collect_trace=False no per-step Decision objects are built, which is
    what the experiment harness uses on large traces.
    """
    _validate_run(instance, arrival_order, preds, config)
    state = PolicyState(SolutionState(instance))
    sol = state.solution
    intervals = instance.intervals
    bits = preds.bits
    algo = config.algorithm
    trace: Optional[List[Decision]] = [] if collect_trace else None

    if algo is Algorithm.NAIVE:
        decide = lambda iv, prd: _decide_naive(sol, iv, prd)
    elif algo is Algorithm.GRNR:
        decide = lambda iv, prd: _decide_grnr(sol, iv)
    elif algo is Algorithm.BK2K:
        decide = lambda iv, prd: _decide_bk2k(sol, iv)
    elif algo is Algorithm.REVOKE_UNIT:
        marked = state.marked
        decide = lambda iv, prd: _decide_revoke_unit(sol, iv, prd, marked)
    elif algo is Algorithm.LR:
        beta = config.beta
        decide = lambda iv, prd: _decide_lr(sol, iv, beta, False)
    elif algo is Algorithm.LR_PRIME:
        beta = config.beta
        decide = lambda iv, prd: _decide_lr(sol, iv, beta, True)
    else:
        lam = config.lam
        theta = config.prediction_threshold
        accepted_prediction = state.accepted_prediction
        decide = lambda iv, prd: _decide_revoke_prop(
            sol, iv, prd, lam, theta, accepted_prediction
        )

    for i in arrival_order:
        iv = intervals[i]
        prd = bits[i]
        accepted, rule, lo, hi = decide(iv, prd)
        displaced = _apply(state, iv, prd, config, accepted, rule, lo, hi)
        if trace is not None:
            trace.append(Decision("accept" if accepted else "reject", displaced, rule))

    return RunResult(
        final_value=sol.value(),
        final_members=tuple(sol.ids),
        trace=tuple(trace) if trace is not None else None,
    )
