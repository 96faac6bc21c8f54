"""Per-trial and per-experiment result records shared by all algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

__all__ = ["TrialResult", "ExperimentSummary"]


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one seeded run of one algorithm on one objective.

    ``wall_time`` is excluded from equality so that two runs with the same
    seed compare equal field-for-field, as the determinism contract
    requires.
    """

    algorithm: str
    function: str
    dim: int
    seed: int
    evaluations_used: int
    success: bool
    best_value: float
    iterations: int
    best_position: Optional[tuple[float, ...]] = None
    wall_time: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate over one algorithm's trials.

    mean/std are computed over *successful* trials only (failed trials
    have no evaluations-to-success count); they are None when no trial
    (mean) or fewer than two trials (std) succeeded.  success_rate is
    over all trials.
    """

    mean_evals: Optional[float]
    std_evals: Optional[float]
    success_rate: float
    trial_count: int
