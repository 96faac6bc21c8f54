"""Shared domain types: box bounds, objectives, seeded draws, evaluation budgets."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "Bounds",
    "Objective",
    "RandomStream",
    "EvalBudget",
    "BudgetExceededError",
    "TrajectoryRecord",
    "clamp_to_bounds",
    "uniform_sample",
    "counted_evaluate",
    "derive_seed",
]

# A point/velocity is a plain 1-D float64 ndarray throughout the package.
Vector = np.ndarray


class BudgetExceededError(RuntimeError):
    """Raised when an evaluation is requested after the budget is spent.

    Terminates the owning trial, never the process: run loops catch this
    and return the state reached so far.
    """


def _as_vector(x, name: str) -> Vector:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Bounds:
    """Box constraints: lower[k] < upper[k] for every coordinate."""

    lower: Vector
    upper: Vector

    def __post_init__(self):
        lo = _as_vector(self.lower, "lower")
        hi = _as_vector(self.upper, "upper")
        if lo.size != hi.size or lo.size < 1:
            raise ValueError(f"bound vectors must share a dimension >= 1, got {lo.size} and {hi.size}")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("bounds must be finite")
        if not (lo < hi).all():
            raise ValueError("every lower bound must be strictly below its upper bound")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def cube(cls, lo: float, hi: float, dim: int) -> "Bounds":
        return cls(np.full(dim, float(lo)), np.full(dim, float(hi)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> Vector:
        return self.upper - self.lower

    def contains(self, x: Vector) -> bool:
        return bool((x >= self.lower).all() and (x <= self.upper).all())


@dataclass(frozen=True)
class Objective:
    """Named evaluatable function with domain and known-optimum metadata.

    Evaluation must be deterministic: the same point always yields the
    same value.  ``known_min``/``known_argmin`` are optional; when both
    are present, ``fn(known_argmin) == known_min`` within 1e-9.
    """

    name: str
    dim: int
    bounds: Bounds
    fn: Callable[[Vector], float]
    known_min: Optional[float] = None
    known_argmin: Optional[Vector] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.bounds.dim != self.dim:
            raise ValueError(f"bounds dimension {self.bounds.dim} != dim {self.dim}")
        if self.known_argmin is not None:
            arg = _as_vector(self.known_argmin, "known_argmin")
            if arg.size != self.dim:
                raise ValueError("known_argmin dimension mismatch")
            arg.setflags(write=False)
            object.__setattr__(self, "known_argmin", arg)

    def __call__(self, x: Vector) -> float:
        return float(self.fn(x))


class RandomStream:
    """Deterministic draw source: one seed, one sequence, any platform.

    Backed by numpy's PCG64 bit generator (pinned; recorded in output
    metadata).  Per-trial streams come from :func:`derive_seed`, which
    maps (master seed, label, index) to distinct 64-bit seeds.
    """

    algorithm = "numpy.random.PCG64"

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self) -> float:
        """One draw from [0, 1)."""
        return float(self._gen.random())

    def uniform_vector(self, d: int) -> Vector:
        """d draws from [0, 1)."""
        return self._gen.random(d)

    def symmetric_vector(self, d: int) -> Vector:
        """d draws from [-1, 1]."""
        return 2.0 * self.uniform_vector(d) - 1.0

    def normal_vector(self, d: int) -> Vector:
        return self._gen.standard_normal(d)


def derive_seed(master_seed: int, label: str, index: int) -> int:
    """Stable 64-bit seed for trial `index` of stream `label`.

    SHA-256 of the canonical "master:label:index" string; distinct inputs
    give distinct seeds for any practical trial count.
    """
    key = f"{int(master_seed)}:{label}:{int(index)}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


@dataclass
class EvalBudget:
    """Monotone counter of objective evaluations, capped at max_evaluations."""

    max_evaluations: int
    used: int = 0

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ValueError("max_evaluations must be positive")
        if not 0 <= self.used <= self.max_evaluations:
            raise ValueError("used must lie in [0, max_evaluations]")

    @property
    def remaining(self) -> int:
        return self.max_evaluations - self.used


@dataclass(frozen=True)
class TrajectoryRecord:
    """One per-iteration population snapshot: positions plus best value."""

    iteration: int
    positions: np.ndarray  # shape (n, d)
    best_value: float


def clamp_to_bounds(x: Vector, b: Bounds) -> Vector:
    """Coordinate-wise projection onto the box.  Idempotent."""
    if x.shape != b.lower.shape:
        raise ValueError(f"point dimension {x.shape} != bounds dimension {b.lower.shape}")
    return np.minimum(np.maximum(x, b.lower), b.upper)


def uniform_sample(b: Bounds, rng: RandomStream) -> Vector:
    """One point uniform over the box; consumes exactly dim draws."""
    return b.lower + rng.uniform_vector(b.dim) * b.width


def counted_evaluate(obj: Objective, x: Vector, budget: EvalBudget) -> float:
    """Evaluate obj at x, charging one unit of budget.

    Raises BudgetExceededError (budget untouched) once the budget is spent.
    """
    if budget.used >= budget.max_evaluations:
        raise BudgetExceededError(
            f"evaluation budget exhausted ({budget.used}/{budget.max_evaluations})"
        )
    value = float(obj.fn(x))
    budget.used += 1
    return value
