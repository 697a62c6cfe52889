"""Experiment harness: permutation trials, error sweeps, CSV persistence."""
from __future__ import annotations

import csv
import hashlib
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import IO, List, Optional, Sequence, Tuple

from .core import Instance, WeightModel
from .offline import CanonicalSolution, opt_weighted
from .policies import Algorithm, PHI, PolicyConfig, run_policy
from .predictions import ErrorModel


class BoundViolation(AssertionError):
    """A sweep row broke the theorem bound claimed for its algorithm."""


def distinct_lengths(instance: Instance) -> int:
    return len({iv.finish - iv.start for iv in instance.intervals})


@dataclass(frozen=True)
class SweepConfig:
    instance: Instance
    dataset: str
    algorithms: Tuple[PolicyConfig, ...]
    error_fractions: Tuple[float, ...]
    trials: int = 1
    base_seed: int = 0
    decision_model: str = "auto"  # "auto" derives the label per algorithm
    fixed_corruption: bool = False
    check_bounds: bool = False
    workers: int = 1
    output_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(not 0.0 <= f <= 1.0 for f in self.error_fractions):
            raise ValueError("error fractions must lie in [0, 1]")
        if self.decision_model not in ("auto", "irrevocable", "revocable"):
            raise ValueError("decision_model must be auto, irrevocable, or revocable")
        if self.decision_model != "auto":
            for cfg in self.algorithms:
                if cfg.decision_model != self.decision_model:
                    raise ValueError(
                        f"algorithm {cfg.label()} is {cfg.decision_model}, "
                        f"incompatible with decision model {self.decision_model}"
                    )


@dataclass(frozen=True)
class SweepRow:
    dataset: str
    weight_model: str
    decision_model: str
    algorithm: str
    parameters: str
    target_error_fraction: float
    achieved_eta: float
    eta_max: float
    trial: int
    seed: int
    alg_value: float
    opt_value: float
    ratio: float


CSV_FIELDS = [f.name for f in fields(SweepRow)]


def _derive_seed(*parts: object) -> int:
    key = "|".join(repr(p) for p in parts).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def _params_string(cfg: PolicyConfig) -> str:
    if cfg.algorithm in (Algorithm.LR, Algorithm.LR_PRIME):
        return f"beta={cfg.beta!r}"
    if cfg.algorithm in (Algorithm.REVOKE_PROP, Algorithm.REVOKE_PROP_HALF):
        return f"lambda={cfg.lam!r};theta={cfg.prediction_threshold!r}"
    return ""


def check_row_bounds(row: SweepRow, cfg: PolicyConfig, k: int, tol: float = 1e-9) -> None:
    """Assert the theorem bound applicable to the row's algorithm, if any."""
    algo = cfg.algorithm
    if algo in (Algorithm.NAIVE, Algorithm.REVOKE_UNIT):
        if row.alg_value < row.opt_value - row.achieved_eta - tol:
            raise BoundViolation(
                f"{row.algorithm}: ALG {row.alg_value} < OPT - eta "
                f"({row.opt_value} - {row.achieved_eta})"
            )
    ratio_bound = None
    if algo is Algorithm.REVOKE_UNIT:
        ratio_bound = 2.0 * k + 1.0
    elif algo is Algorithm.BK2K:
        ratio_bound = 2.0 * k
    elif algo is Algorithm.LR and cfg.beta >= PHI:
        ratio_bound = 2.0 * cfg.beta + 1.0
    elif algo is Algorithm.REVOKE_PROP:
        lam = cfg.lam
        ratio_bound = (4.0 * lam * lam + 2.0 * lam) / (lam - 1.0)
    if ratio_bound is not None and row.ratio > ratio_bound + tol:
        raise BoundViolation(
            f"{row.algorithm}: OPT/ALG {row.ratio} exceeds bound {ratio_bound}"
        )


def _run_cell(
    config: SweepConfig,
    cfg: PolicyConfig,
    error_model: ErrorModel,
    opt: CanonicalSolution,
    fraction: float,
    trial: int,
    k: int,
) -> SweepRow:
    instance = config.instance
    label = cfg.label()
    seed = _derive_seed(config.base_seed, label, fraction, trial)
    if config.fixed_corruption:
        corr_seed = _derive_seed(config.base_seed, "corruption", fraction)
    else:
        corr_seed = _derive_seed(seed, "corruption")
    perm_seed = _derive_seed(seed, "permutation")

    preds, report = error_model.corrupt(fraction, corr_seed)
    order = list(range(len(instance)))
    random.Random(perm_seed).shuffle(order)
    result = run_policy(instance, order, preds, cfg, collect_trace=False)

    alg_value = result.final_value
    if alg_value > 0.0:
        ratio = opt.value / alg_value
    else:
        ratio = 1.0 if opt.value == 0.0 else math.inf
    row = SweepRow(
        dataset=config.dataset,
        weight_model=instance.weight_model.value,
        decision_model=cfg.decision_model,
        algorithm=label,
        parameters=_params_string(cfg),
        target_error_fraction=fraction,
        achieved_eta=report.total,
        eta_max=report.max_possible,
        trial=trial,
        seed=seed,
        alg_value=alg_value,
        opt_value=opt.value,
        ratio=ratio,
    )
    if config.check_bounds:
        check_row_bounds(row, cfg, k)
    return row


def sweep(config: SweepConfig) -> List[SweepRow]:
    """Run every (algorithm, error fraction, trial) cell. Deterministic: the
    per-cell seeds are pure functions of the config, and rows are sorted
    before output, so worker count never changes the result."""
    instance = config.instance
    opt = opt_weighted(instance)
    error_model = ErrorModel(instance, opt)
    k = distinct_lengths(instance)

    cells = [
        (cfg, fraction, trial)
        for cfg in config.algorithms
        for fraction in config.error_fractions
        for trial in range(config.trials)
    ]

    def run(cell: Tuple[PolicyConfig, float, int]) -> SweepRow:
        cfg, fraction, trial = cell
        return _run_cell(config, cfg, error_model, opt, fraction, trial, k)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(run, cells))
    else:
        rows = [run(cell) for cell in cells]

    rows.sort(key=lambda r: (r.algorithm, r.target_error_fraction, r.trial))
    if config.output_path is not None:
        with open(config.output_path, "w", newline="") as fh:
            write_rows(rows, fh)
    return rows


def write_rows(rows: Sequence[SweepRow], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow(
            [
                row.dataset,
                row.weight_model,
                row.decision_model,
                row.algorithm,
                row.parameters,
                repr(row.target_error_fraction),
                repr(row.achieved_eta),
                repr(row.eta_max),
                row.trial,
                row.seed,
                repr(row.alg_value),
                repr(row.opt_value),
                repr(row.ratio),
            ]
        )
