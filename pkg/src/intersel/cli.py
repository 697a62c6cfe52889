"""Benchmark CLI: offline optima, error reports, single runs, sweeps, fixtures."""
from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional, Sequence

from .adversarial import gen_alpha_lb, gen_theorem2, gen_theorem4
from .core import Instance, WeightModel
from .harness import BoundViolation, SweepConfig, sweep
from .offline import opt_weighted
from .policies import Algorithm, PHI, PolicyConfig, run_policy
from .predictions import ErrorModel, PredictionVector
from .workloads import (
    parse_swf,
    read_instance,
    read_predictions,
    write_instance,
    write_predictions,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BOUNDS = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to status 2; we reserve that
        raise UsageError(message)


def _load_instance(path: str) -> Instance:
    with open(path) as fh:
        return read_instance(fh)


def _parse_algorithms(spec: str, beta: float, lam: float) -> List[PolicyConfig]:
    configs = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        name, _, param = token.partition("@")
        try:
            algo = Algorithm(name)
        except ValueError:
            raise UsageError(f"unknown algorithm {name!r}") from None
        b, l = beta, lam
        if param:
            value = float(param)
            if algo in (Algorithm.LR, Algorithm.LR_PRIME):
                b = value
            elif algo in (Algorithm.REVOKE_PROP, Algorithm.REVOKE_PROP_HALF):
                l = value
            else:
                raise UsageError(f"algorithm {name!r} takes no parameter")
        configs.append(PolicyConfig(algo, beta=b, lam=l))
    if not configs:
        raise UsageError("no algorithms given")
    return configs


def _parse_fractions(spec: str) -> List[float]:
    return [float(tok) for tok in spec.split(",") if tok.strip()]


def _read_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, value = stripped.partition("=")
            if not sep:
                raise ValueError(f"config line {line_no}: expected key=value")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _build_parser() -> _Parser:
    parser = _Parser(prog="intersel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_opt = sub.add_parser("opt", help="print the canonical optimum of an instance")
    p_opt.add_argument("instance")

    p_eta = sub.add_parser("eta", help="print the error report of a prediction file")
    p_eta.add_argument("instance")
    p_eta.add_argument("predictions")

    p_run = sub.add_parser("run", help="run one policy over one seeded permutation")
    p_run.add_argument("--instance", required=True)
    p_run.add_argument("--algo", required=True)
    p_run.add_argument("--lambda", dest="lam", type=float, default=PHI)
    p_run.add_argument("--beta", type=float, default=PHI)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--error", type=float, default=0.0,
                       help="target corruption fraction of eta_max")

    p_sweep = sub.add_parser("sweep", help="run a full experiment sweep to CSV")
    p_sweep.add_argument("--config", help="key=value file mirroring these flags")
    p_sweep.add_argument("--instance")
    p_sweep.add_argument("--dataset", default="instance")
    p_sweep.add_argument("--algos", default=None)
    p_sweep.add_argument("--fractions", default="0,0.125,0.25,0.375,0.5,0.625,0.75,0.875,1")
    p_sweep.add_argument("--trials", type=int, default=50)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--lambda", dest="lam", type=float, default=PHI)
    p_sweep.add_argument("--beta", type=float, default=PHI)
    p_sweep.add_argument("--decision-model", default="auto",
                         choices=["auto", "irrevocable", "revocable"])
    p_sweep.add_argument("--fixed-corruption", action="store_true")
    p_sweep.add_argument("--check-bounds", action="store_true")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--out", required=False)

    p_gen = sub.add_parser("gen-adversarial", help="write a tight-instance fixture")
    p_gen.add_argument("construction", choices=["thm2", "thm4", "alpha"])
    p_gen.add_argument("--copies", type=int, default=1)
    p_gen.add_argument("--base-weight", type=float, default=1.0)
    p_gen.add_argument("--alpha", type=float, default=PHI)
    p_gen.add_argument("--eps", type=float, default=0.1)
    p_gen.add_argument("--branch", choices=["accept", "reject"], default="accept")
    p_gen.add_argument("--out", required=True, help="output path prefix")

    p_swf = sub.add_parser("ingest-swf", help="convert an SWF trace to an instance file")
    p_swf.add_argument("path")
    p_swf.add_argument("--swf-mapping", choices=["start", "submit"], default="start")
    p_swf.add_argument("--weight-model", choices=["unit", "proportional"], default="unit")
    p_swf.add_argument("--out", required=True)

    return parser


def _cmd_opt(args) -> int:
    instance = _load_instance(args.instance)
    opt = opt_weighted(instance)
    print(f"OPT {opt.value!r}")
    print("members " + " ".join(str(i) for i in sorted(opt.member_ids)))
    return EXIT_OK


def _cmd_eta(args) -> int:
    instance = _load_instance(args.instance)
    with open(args.predictions) as fh:
        bits = read_predictions(fh)
    if len(bits) != len(instance):
        raise ValueError(
            f"prediction length {len(bits)} does not match instance size {len(instance)}"
        )
    report = ErrorModel(instance, opt_weighted(instance)).report(PredictionVector(bits))
    print(f"eta {report.total!r}")
    print(f"eta_max {report.max_possible!r}")
    return EXIT_OK


def _cmd_run(args) -> int:
    instance = _load_instance(args.instance)
    configs = _parse_algorithms(args.algo, args.beta, args.lam)
    if len(configs) != 1:
        raise UsageError("run takes exactly one algorithm")
    cfg = configs[0]
    opt = opt_weighted(instance)
    model = ErrorModel(instance, opt)
    preds, report = model.corrupt(args.error, args.seed)
    order = list(range(len(instance)))
    random.Random(args.seed).shuffle(order)
    result = run_policy(instance, order, preds, cfg, collect_trace=False)
    print(f"ALG {result.final_value!r}")
    print(f"OPT {opt.value!r}")
    print(f"eta {report.total!r}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.config:
        overrides = _read_config_file(args.config)
        casts = {"trials": int, "seed": int, "workers": int,
                 "lam": float, "beta": float,
                 "fixed_corruption": lambda v: v.lower() in ("1", "true", "yes"),
                 "check_bounds": lambda v: v.lower() in ("1", "true", "yes")}
        for key, value in overrides.items():
            if key == "lambda":
                key = "lam"
            if not hasattr(args, key):
                raise ValueError(f"unknown config key {key!r}")
            setattr(args, key, casts.get(key, str)(value))
    if not args.instance:
        raise UsageError("sweep needs --instance (flag or config file)")
    if not args.algos:
        raise UsageError("sweep needs --algos (flag or config file)")
    instance = _load_instance(args.instance)
    config = SweepConfig(
        instance=instance,
        dataset=args.dataset,
        algorithms=tuple(_parse_algorithms(args.algos, args.beta, args.lam)),
        error_fractions=tuple(_parse_fractions(args.fractions)),
        trials=args.trials,
        base_seed=args.seed,
        decision_model=args.decision_model,
        fixed_corruption=args.fixed_corruption,
        check_bounds=args.check_bounds,
        workers=args.workers,
        output_path=args.out,
    )
    rows = sweep(config)
    print(f"wrote {len(rows)} rows" + (f" to {args.out}" if args.out else ""))
    return EXIT_OK


def _cmd_gen_adversarial(args) -> int:
    if args.construction == "thm2":
        fixture = gen_theorem2(args.copies, branch=args.branch)
    elif args.construction == "thm4":
        fixture = gen_theorem4(args.copies, base=args.base_weight, branch=args.branch)
    else:
        fixture = gen_alpha_lb(args.alpha, args.eps)
    with open(args.out + ".instance", "w") as fh:
        write_instance(fixture.instance, fh)
    with open(args.out + ".preds", "w") as fh:
        write_predictions(fixture.preds.bits, fh)
    for key in sorted(fixture.expected):
        print(f"{key} {fixture.expected[key]!r}")
    return EXIT_OK


def _cmd_ingest_swf(args) -> int:
    with open(args.path) as fh:
        result = parse_swf(fh, WeightModel(args.weight_model), mapping=args.swf_mapping)
    with open(args.out, "w") as fh:
        write_instance(result.instance, fh)
    print(f"jobs {result.total_jobs} kept {len(result.instance)} dropped {result.dropped}")
    print(f"mapping {args.swf_mapping}")
    return EXIT_OK


_COMMANDS = {
    "opt": _cmd_opt,
    "eta": _cmd_eta,
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "gen-adversarial": _cmd_gen_adversarial,
    "ingest-swf": _cmd_ingest_swf,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundViolation as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
