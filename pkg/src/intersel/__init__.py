"""Online interval selection with untrusted binary predictions."""

from .core import (
    ConflictKind,
    Instance,
    Interval,
    SolutionState,
    WeightModel,
    classify_conflict,
    conflicts,
)
from .offline import CanonicalSolution, brute_force_opt, opt_unit, opt_weighted
from .predictions import (
    ErrorModel,
    ErrorReport,
    PredictionVector,
    corrupt,
    interval_error,
    perfect_predictions,
    total_error,
)
from .policies import (
    Algorithm,
    Decision,
    PHI,
    PolicyConfig,
    PolicyState,
    RunResult,
    run_policy,
)
from .adversarial import AdversarialFixture, gen_alpha_lb, gen_theorem2, gen_theorem4
from .harness import SweepConfig, SweepRow, distinct_lengths, sweep
from .workloads import (
    KDistinct,
    SwfParseResult,
    Uniform,
    gen_random,
    parse_swf,
    read_instance,
    write_instance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
