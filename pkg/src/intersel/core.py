"""Interval geometry, instances, and the ordered disjoint-solution container."""
from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, List, Tuple


class WeightModel(enum.Enum):
    UNIT = "unit"
    PROPORTIONAL = "proportional"


@dataclass(frozen=True)
class Interval:
    """Half-open segment [start, finish). Touching endpoints do not overlap."""

    id: int
    start: float
    finish: float

    def __post_init__(self) -> None:
        if not self.start < self.finish:
            raise ValueError(
                f"interval {self.id}: start must be strictly less than finish "
                f"(got [{self.start}, {self.finish}))"
            )

    @property
    def length(self) -> float:
        return self.finish - self.start


class ConflictKind(enum.Enum):
    DISJOINT = "disjoint"
    PARTIAL = "partial"
    NEW_SUBSUMES_OLD = "new-subsumes-old"
    OLD_SUBSUMES_NEW = "old-subsumes-new"
    EQUAL = "equal"


def conflicts(a: Interval, b: Interval) -> bool:
    """Half-open overlap test; [1,3) and [3,5) do not conflict."""
    return a.start < b.finish and b.start < a.finish


def classify_conflict(existing: Interval, new: Interval) -> ConflictKind:
    """Classify the ordered pair (existing, new) into exactly one conflict kind.

    Equal endpoints are their own kind: equality is a containment-type conflict
    but not proper inclusion, so inclusion-based replacement rules must not
    fire on duplicates.
    """
    if not conflicts(existing, new):
        return ConflictKind.DISJOINT
    if existing.start == new.start and existing.finish == new.finish:
        return ConflictKind.EQUAL
    if existing.start <= new.start and new.finish <= existing.finish:
        return ConflictKind.OLD_SUBSUMES_NEW
    if new.start <= existing.start and existing.finish <= new.finish:
        return ConflictKind.NEW_SUBSUMES_OLD
    return ConflictKind.PARTIAL


class Instance:
    """An indexed set of intervals plus the weight model that prices them.

    The list order is canonical identity (ids must be 0..n-1 in order), not
    arrival order; arrival permutations are supplied separately at run time.
    Immutable after construction and safe to share across threads.
    """

    __slots__ = ("intervals", "weight_model", "starts", "finishes", "weights")

    def __init__(self, intervals: Iterable[Interval], weight_model: WeightModel):
        self.intervals: Tuple[Interval, ...] = tuple(intervals)
        self.weight_model = weight_model
        for idx, iv in enumerate(self.intervals):
            if iv.id != idx:
                raise ValueError(
                    f"interval ids must be dense 0..n-1 in list order; "
                    f"position {idx} holds id {iv.id}"
                )
        self.starts: Tuple[float, ...] = tuple(iv.start for iv in self.intervals)
        self.finishes: Tuple[float, ...] = tuple(iv.finish for iv in self.intervals)
        if weight_model is WeightModel.UNIT:
            self.weights: Tuple[float, ...] = (1.0,) * len(self.intervals)
        else:
            self.weights = tuple(iv.finish - iv.start for iv in self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def weight(self, interval_id: int) -> float:
        return self.weights[interval_id]

    def __repr__(self) -> str:
        return f"Instance(n={len(self)}, weight_model={self.weight_model.value})"


class SolutionState:
    """Accepted intervals, kept pairwise disjoint and ordered by start.

    Because members are disjoint, both start and finish coordinates are sorted
    in the same order, so the members overlapping a query interval always form
    one contiguous index range, found by two binary searches.
    """

    __slots__ = ("instance", "ids", "member_starts", "member_finishes", "total_weight")

    def __init__(self, instance: Instance):
        self.instance = instance
        self.ids: List[int] = []
        self.member_starts: List[float] = []
        self.member_finishes: List[float] = []
        self.total_weight = 0.0

    def __len__(self) -> int:
        return len(self.ids)

    def member_ids(self) -> List[int]:
        return list(self.ids)

    def members(self) -> List[Interval]:
        return [self.instance.intervals[i] for i in self.ids]

    def conflict_range(self, start: float, finish: float) -> Tuple[int, int]:
        """Index range [lo, hi) of members overlapping [start, finish).

        When there is no overlap, lo == hi is also the insertion index.
        """
        lo = bisect_right(self.member_finishes, start)
        hi = bisect_left(self.member_starts, finish)
        return lo, hi

    def conflict_set(self, interval: Interval) -> List[Interval]:
        """Members overlapping `interval`, in increasing start order."""
        lo, hi = self.conflict_range(interval.start, interval.finish)
        return [self.instance.intervals[i] for i in self.ids[lo:hi]]

    def conflict_ids(self, start: float, finish: float) -> List[int]:
        lo, hi = self.conflict_range(start, finish)
        return self.ids[lo:hi]

    def replace(self, lo: int, hi: int, interval: Interval) -> List[int]:
        """Insert `interval`, splicing out members [lo, hi). Returns displaced ids."""
        displaced = self.ids[lo:hi]
        weights = self.instance.weights
        for d in displaced:
            self.total_weight -= weights[d]
        self.ids[lo:hi] = [interval.id]
        self.member_starts[lo:hi] = [interval.start]
        self.member_finishes[lo:hi] = [interval.finish]
        self.total_weight += weights[interval.id]
        return displaced

    def value(self) -> float:
        """Exact total weight, summed left to right over current members."""
        weights = self.instance.weights
        total = 0.0
        for i in self.ids:
            total += weights[i]
        return total

    def check_disjoint(self) -> None:
        """Exhaustive pairwise disjointness check (test hook, O(n^2))."""
        members = self.members()
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                if conflicts(a, b):
                    raise AssertionError(f"solution members overlap: {a} and {b}")


def conflict_set(state: SolutionState, interval: Interval) -> List[Interval]:
    return state.conflict_set(interval)
