"""Seeded experiment protocol: multi-trial campaigns and their statistics.

Success means reaching the tolerance band around the known minimum before
the evaluation budget runs out; the comparison metric is the evaluation
count at first success.  Evaluation statistics are computed over
successful trials only (failed trials have no such count); the success
rate is reported separately over all trials.
"""

from __future__ import annotations

import statistics
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from .baselines import GaParams, PsoParams, run_ga, run_pso
from .bat import BatParams, run_bat
from .benchmarks import BenchmarkSpec
from .core import EvalBudget, TrajectoryRecord, derive_seed
from .results import ExperimentSummary, TrialResult

__all__ = [
    "ALGORITHMS",
    "UnknownAlgorithmError",
    "TrialResult",
    "ExperimentSummary",
    "TrajectoryRecord",
    "default_params",
    "run_trial",
    "experiment_trials",
    "run_experiment",
    "summarize",
]

ALGORITHMS = ("bat", "pso", "ga")

AlgorithmParams = BatParams | PsoParams | GaParams
Recorder = Callable[[TrajectoryRecord], None]


class UnknownAlgorithmError(KeyError):
    """Algorithm identifier outside {bat, pso, ga}."""


def default_params(algorithm: str) -> AlgorithmParams:
    if algorithm == "bat":
        return BatParams()
    if algorithm == "pso":
        return PsoParams()
    if algorithm == "ga":
        return GaParams()
    raise UnknownAlgorithmError(algorithm)


def run_trial(
    algorithm: str,
    spec: BenchmarkSpec,
    tolerance: Optional[float],
    max_evals: int,
    seed: int,
    params: Optional[AlgorithmParams] = None,
    recorder: Optional[Recorder] = None,
) -> TrialResult:
    """One seeded run of one algorithm against one benchmark."""
    if algorithm not in ALGORITHMS:
        raise UnknownAlgorithmError(algorithm)
    if tolerance is not None and spec.objective.known_min is None:
        raise ValueError(
            f"{spec.name} has no known minimum; tolerance-based success is undefined"
        )
    if params is None:
        params = default_params(algorithm)
    budget = EvalBudget(max_evals)
    obj = spec.objective
    if algorithm == "bat":
        _, result = run_bat(params, obj, seed, budget, stop_at=tolerance, recorder=recorder)
        return result
    if algorithm == "pso":
        return run_pso(params, obj, seed, budget, stop_at=tolerance, recorder=recorder)
    return run_ga(params, obj, seed, budget, stop_at=tolerance, recorder=recorder)


def experiment_trials(
    algorithms: Sequence[str],
    spec: BenchmarkSpec,
    tolerance: Optional[float],
    max_evals: int,
    trials: int,
    master_seed: int,
    params_by_algorithm: Optional[dict[str, AlgorithmParams]] = None,
    workers: int = 1,
) -> dict[str, list[TrialResult]]:
    """All trial results, keyed by algorithm, ordered by trial index.

    Trial k of each algorithm runs with the seed derived from
    (master_seed, algorithm, k), so results do not depend on `workers`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise UnknownAlgorithmError(algorithm)
    params_by_algorithm = params_by_algorithm or {}

    jobs = [
        (algorithm, k, derive_seed(master_seed, algorithm, k))
        for algorithm in algorithms
        for k in range(trials)
    ]

    def execute(job):
        algorithm, _, seed = job
        return run_trial(
            algorithm,
            spec,
            tolerance,
            max_evals,
            seed,
            params=params_by_algorithm.get(algorithm),
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(execute, jobs))
    else:
        outcomes = [execute(job) for job in jobs]

    by_algorithm: dict[str, list[TrialResult]] = {a: [None] * trials for a in algorithms}
    for (algorithm, k, _), outcome in zip(jobs, outcomes):
        by_algorithm[algorithm][k] = outcome
    return by_algorithm


def run_experiment(
    algorithms: Sequence[str],
    spec: BenchmarkSpec,
    tolerance: Optional[float],
    max_evals: int,
    trials: int,
    master_seed: int,
    params_by_algorithm: Optional[dict[str, AlgorithmParams]] = None,
    workers: int = 1,
) -> dict[str, ExperimentSummary]:
    """Aggregated campaign: one ExperimentSummary per algorithm."""
    by_algorithm = experiment_trials(
        algorithms,
        spec,
        tolerance,
        max_evals,
        trials,
        master_seed,
        params_by_algorithm=params_by_algorithm,
        workers=workers,
    )
    return {algorithm: summarize(results) for algorithm, results in by_algorithm.items()}


def summarize(results: Sequence[TrialResult]) -> ExperimentSummary:
    """Mean / sample-std of evaluations over successes, rate over all trials."""
    if not results:
        raise ValueError("summarize requires at least one trial")
    successes = [r.evaluations_used for r in results if r.success]
    mean = statistics.fmean(successes) if successes else None
    std = statistics.stdev(successes) if len(successes) >= 2 else None
    return ExperimentSummary(
        mean_evals=mean,
        std_evals=std,
        success_rate=len(successes) / len(results),
        trial_count=len(results),
    )
