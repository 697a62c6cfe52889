"""SWF trace ingestion, synthetic generators, and the native instance format."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import IO, Iterable, List, Sequence, Tuple, Union

from .core import Instance, Interval, WeightModel


class SwfFormatError(ValueError):
    """Raised on a malformed non-comment SWF line, carrying its line number."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"SWF line {line_no}: {reason}")
        self.line_no = line_no


@dataclass(frozen=True)
class SwfJob:
    job_id: int
    submit: float
    wait: float
    runtime: float


@dataclass(frozen=True)
class SwfParseResult:
    instance: Instance
    dropped: int
    total_jobs: int


def parse_swf(
    stream: Union[IO[str], Iterable[str]],
    weight_model: WeightModel = WeightModel.UNIT,
    mapping: str = "start",
) -> SwfParseResult:
    """Convert an SWF job trace to an interval instance.

    mapping="start" uses actual start time (submit + wait) as the interval
    start; mapping="submit" uses the submit time. Jobs with negative or zero
    runtime, or negative submit/wait fields, are dropped and counted, per the
    archive convention of -1 for missing data.
    """
    if mapping not in ("start", "submit"):
        raise ValueError("mapping must be 'start' or 'submit'")
    intervals: List[Interval] = []
    dropped = 0
    total = 0
    for line_no, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(";"):
            continue
        fields = stripped.split()
        if len(fields) < 4:
            raise SwfFormatError(line_no, f"expected at least 4 fields, got {len(fields)}")
        try:
            submit = float(fields[1])
            wait = float(fields[2])
            runtime = float(fields[3])
        except ValueError as exc:
            raise SwfFormatError(line_no, f"non-numeric field: {exc}") from None
        total += 1
        if runtime <= 0 or submit < 0 or wait < 0:
            dropped += 1
            continue
        start = submit + wait if mapping == "start" else submit
        intervals.append(Interval(len(intervals), start, start + runtime))
    return SwfParseResult(Instance(intervals, weight_model), dropped, total)


@dataclass(frozen=True)
class Uniform:
    low: float
    high: float


@dataclass(frozen=True)
class KDistinct:
    lengths: Tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.lengths:
            raise ValueError("k_distinct needs at least one length")


LengthDistribution = Union[Uniform, KDistinct]


def gen_random(
    n: int,
    length_distribution: LengthDistribution,
    span: float,
    seed: int,
    weight_model: WeightModel = WeightModel.UNIT,
    grid: float = 0.0,
) -> Instance:
    """Seeded random instance with starts in [0, span].

    grid > 0 snaps coordinates to multiples of grid; with a dyadic grid all
    weights and weight sums are exact in floating point, which the oracle
    equivalence suites rely on.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    # k_distinct exists to control the number of distinct lengths exactly, so
    # starts are always snapped to a fine dyadic grid there: with dyadic
    # coordinates, finish - start reproduces the drawn length bit-for-bit.
    start_grid = grid if grid > 0.0 else (2.0 ** -10 if isinstance(length_distribution, KDistinct) else 0.0)
    intervals = []
    for i in range(n):
        start = rng.uniform(0.0, span)
        if isinstance(length_distribution, Uniform):
            length = rng.uniform(length_distribution.low, length_distribution.high)
        else:
            length = rng.choice(length_distribution.lengths)
        if start_grid > 0.0:
            start = round(start / start_grid) * start_grid
        if grid > 0.0:
            length = max(grid, round(length / grid) * grid)
        intervals.append(Interval(i, start, start + length))
    return Instance(intervals, weight_model)


INSTANCE_HEADER = "#interval-instance v1"


def write_instance(instance: Instance, stream: IO[str]) -> None:
    stream.write(f"{INSTANCE_HEADER} {instance.weight_model.value}\n")
    for iv in instance.intervals:
        stream.write(f"{iv.id} {iv.start!r} {iv.finish!r}\n")


def read_instance(stream: Union[IO[str], Iterable[str]]) -> Instance:
    lines = iter(stream)
    try:
        header = next(lines).strip()
    except StopIteration:
        raise ValueError("empty instance file") from None
    parts = header.split()
    if parts[:2] != INSTANCE_HEADER.split() or len(parts) != 3:
        raise ValueError(f"bad instance header: {header!r}")
    try:
        model = WeightModel(parts[2])
    except ValueError:
        raise ValueError(f"unknown weight model {parts[2]!r}") from None
    rows: List[Tuple[int, float, float]] = []
    for line_no, line in enumerate(lines, start=2):
        stripped = line.strip()
        if not stripped:
            continue
        fields = stripped.split()
        if len(fields) != 3:
            raise ValueError(f"instance line {line_no}: expected 'id start finish'")
        rows.append((int(fields[0]), float(fields[1]), float(fields[2])))
    rows.sort(key=lambda r: r[0])
    return Instance(
        [Interval(i, s, f) for (i, s, f) in rows],
        model,
    )


def write_predictions(preds: Sequence[int], stream: IO[str]) -> None:
    stream.write("".join(str(int(b)) for b in preds) + "\n")


def read_predictions(stream: Union[IO[str], Iterable[str]]) -> Tuple[int, ...]:
    bits = []
    for line in stream:
        for ch in line.split():
            for c in ch:
                if c not in "01":
                    raise ValueError(f"prediction bits must be 0/1, got {c!r}")
                bits.append(int(c))
    return tuple(bits)
