"""batbench: echolocation-inspired swarm optimizer, baselines, and harness."""

__version__ = "0.1.0"

from .baselines import GaParams, PsoParams, run_ga, run_pso
from .bat import BatParams, BatState, run_bat
from .benchmarks import BenchmarkSpec, benchmark_spec, evaluate_benchmark, registry_names
from .core import (
    Bounds,
    BudgetExceededError,
    EvalBudget,
    Objective,
    RandomStream,
    TrajectoryRecord,
    clamp_to_bounds,
    counted_evaluate,
    derive_seed,
    uniform_sample,
)
from .harness import (
    ALGORITHMS,
    ExperimentSummary,
    TrialResult,
    experiment_trials,
    run_experiment,
    run_trial,
    summarize,
)

__all__ = [
    "__version__",
    "ALGORITHMS",
    "BatParams",
    "BatState",
    "BenchmarkSpec",
    "Bounds",
    "BudgetExceededError",
    "EvalBudget",
    "ExperimentSummary",
    "GaParams",
    "Objective",
    "PsoParams",
    "RandomStream",
    "TrajectoryRecord",
    "TrialResult",
    "benchmark_spec",
    "clamp_to_bounds",
    "counted_evaluate",
    "derive_seed",
    "evaluate_benchmark",
    "experiment_trials",
    "registry_names",
    "run_bat",
    "run_experiment",
    "run_ga",
    "run_pso",
    "run_trial",
    "summarize",
    "uniform_sample",
]
