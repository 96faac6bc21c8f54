"""Benchmark function registry: continuous box-constrained test problems.

Each entry carries its standard domain and known-optimum metadata.  The
``citation`` tag distinguishes printed-variant formulas ("paper-eq") from
standard literature definitions ("standard-literature").
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Bounds, Objective, Vector

__all__ = [
    "BenchmarkSpec",
    "UnknownBenchmarkError",
    "benchmark_spec",
    "evaluate_benchmark",
    "registry_names",
    "dim_constraint",
]


class UnknownBenchmarkError(KeyError):
    """Lookup of a name the registry does not contain."""


def rosenbrock_paper(x: Vector) -> float:
    """Banana valley with the squared-variable first term: sum (1-x_i^2)^2 + 100 (x_{i+1}-x_i^2)^2.

    Note this variant vanishes at x_i = -1 as well as x_i = +1 (with the
    chain condition x_{i+1} = x_i^2), so the 2-D minimizers are (1,1) and
    (-1,1).
    """
    x = np.asarray(x, dtype=float)
    return float(np.sum((1.0 - x[:-1] ** 2) ** 2 + 100.0 * (x[1:] - x[:-1] ** 2) ** 2))


def rosenbrock_classic(x: Vector) -> float:
    """Classical Rosenbrock: sum (1-x_i)^2 + 100 (x_{i+1}-x_i^2)^2, unique minimum at (1,...,1)."""
    x = np.asarray(x, dtype=float)
    return float(np.sum((1.0 - x[:-1]) ** 2 + 100.0 * (x[1:] - x[:-1] ** 2) ** 2))


def eggcrate(x: Vector) -> float:
    """2-D eggcrate: x^2 + y^2 + 25 (sin^2 x + sin^2 y)."""
    a, b = float(x[0]), float(x[1])
    return a * a + b * b + 25.0 * (np.sin(a) ** 2 + np.sin(b) ** 2)


def dejong_sphere(x: Vector) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x))


def ackley(x: Vector) -> float:
    x = np.asarray(x, dtype=float)
    d = x.size
    return float(
        20.0
        + np.e
        - 20.0 * np.exp(-0.2 * np.sqrt(np.sum(x * x) / d))
        - np.exp(np.sum(np.cos(2.0 * np.pi * x)) / d)
    )


def michalewicz(x: Vector, m: int = 10) -> float:
    """Steep-valley separable function, d! local optima on [0, pi]^d."""
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.size + 1)
    return float(-np.sum(np.sin(x) * np.sin(i * x * x / np.pi) ** (2 * m)))


def rastrigin(x: Vector) -> float:
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def griewank(x: Vector) -> float:
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.size + 1)
    return float(np.sum(x * x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def easom(x: Vector) -> float:
    a, b = float(x[0]), float(x[1])
    return float(-np.cos(a) * np.cos(b) * np.exp(-((a - np.pi) ** 2 + (b - np.pi) ** 2)))


def schwefel(x: Vector) -> float:
    x = np.asarray(x, dtype=float)
    return float(418.9829 * x.size - np.sum(x * np.sin(np.sqrt(np.abs(x)))))


def shubert(x: Vector) -> float:
    """2-D Shubert: product of two cosine combs; 18 global minima at -186.7309..."""
    j = np.arange(1, 6)

    def comb(t: float) -> float:
        return float(np.sum(j * np.cos((j + 1) * t + j)))

    return comb(float(x[0])) * comb(float(x[1]))


# Four well-separated Gaussian wells of distinct depth; the deepest (2.0 at
# (3,3)) is the global minimum.  Cross-talk between wells is < 1e-11, so the
# center is the argmin to well below the metadata tolerance.
_PEAK_CENTERS = np.array([[3.0, 3.0], [-3.0, -3.0], [3.0, -3.0], [-3.0, 3.0]])
_PEAK_HEIGHTS = np.array([2.0, 1.5, 1.2, 1.0])
_PEAK_WIDTH = 0.8


def multiple_peaks(x: Vector) -> float:
    x = np.asarray(x, dtype=float)
    d2 = np.sum((_PEAK_CENTERS - x) ** 2, axis=1)
    return float(-np.sum(_PEAK_HEIGHTS * np.exp(-d2 / (2.0 * _PEAK_WIDTH**2))))


# Frozen high-precision minimizers (grid-refinement; see tests for the
# oracle that re-derives them).
_MICHALEWICZ_ARGMIN = {
    2: np.array([2.202905520481451, np.pi / 2]),
    5: np.array(
        [
            2.202905520481451,
            np.pi / 2,
            1.2849915707866182,
            1.9230584692013135,
            1.7204697721416045,
        ]
    ),
}
_SCHWEFEL_COORD_ARGMIN = 420.9687462275036
_SHUBERT_ARGMIN = np.array([-1.425128429776018, -0.8003211022876466])


@dataclass(frozen=True)
class BenchmarkSpec:
    """Registry entry: the objective plus its provenance tag."""

    name: str
    objective: Objective
    default_dim: int
    citation: str  # "paper-eq" | "standard-literature"


@dataclass(frozen=True)
class _Definition:
    fn: Callable[[Vector], float]
    lo: float
    hi: float
    default_dim: int
    citation: str
    fixed_dim: Optional[int] = None  # None: any dim >= min_dim
    min_dim: int = 1
    # argmin(dim) -> vector or None when unknown for that dim
    argmin: Optional[Callable[[int], Optional[np.ndarray]]] = None
    # explicit optimum value; None means "evaluate fn at argmin"
    min_value: Optional[float] = None


def _origin(dim: int) -> np.ndarray:
    return np.zeros(dim)


def _ones(dim: int) -> np.ndarray:
    return np.ones(dim)


_REGISTRY: dict[str, _Definition] = {
    "rosenbrock_paper": _Definition(
        rosenbrock_paper, -2.048, 2.048, default_dim=2, citation="paper-eq",
        min_dim=2, argmin=_ones, min_value=0.0,
    ),
    "rosenbrock_classic": _Definition(
        rosenbrock_classic, -2.048, 2.048, default_dim=2, citation="standard-literature",
        min_dim=2, argmin=_ones, min_value=0.0,
    ),
    "eggcrate": _Definition(
        eggcrate, -2.0 * np.pi, 2.0 * np.pi, default_dim=2, citation="paper-eq",
        fixed_dim=2, argmin=_origin, min_value=0.0,
    ),
    "dejong_sphere": _Definition(
        dejong_sphere, -10.0, 10.0, default_dim=2, citation="paper-eq",
        argmin=_origin, min_value=0.0,
    ),
    "ackley": _Definition(
        ackley, -30.0, 30.0, default_dim=2, citation="paper-eq",
        argmin=_origin, min_value=0.0,
    ),
    "michalewicz": _Definition(
        michalewicz, 0.0, np.pi, default_dim=2, citation="paper-eq",
        argmin=lambda dim: _MICHALEWICZ_ARGMIN.get(dim),
    ),
    "rastrigin": _Definition(
        rastrigin, -5.12, 5.12, default_dim=2, citation="standard-literature",
        argmin=_origin, min_value=0.0,
    ),
    "griewank": _Definition(
        griewank, -600.0, 600.0, default_dim=2, citation="standard-literature",
        argmin=_origin, min_value=0.0,
    ),
    "easom": _Definition(
        easom, -100.0, 100.0, default_dim=2, citation="standard-literature",
        fixed_dim=2, argmin=lambda dim: np.array([np.pi, np.pi]), min_value=-1.0,
    ),
    "schwefel": _Definition(
        schwefel, -500.0, 500.0, default_dim=2, citation="standard-literature",
        argmin=lambda dim: np.full(dim, _SCHWEFEL_COORD_ARGMIN),
    ),
    "shubert": _Definition(
        shubert, -10.0, 10.0, default_dim=2, citation="standard-literature",
        fixed_dim=2, argmin=lambda dim: _SHUBERT_ARGMIN.copy(),
    ),
    "multiple_peaks": _Definition(
        multiple_peaks, -5.0, 5.0, default_dim=2, citation="standard-literature",
        fixed_dim=2, argmin=lambda dim: np.array([3.0, 3.0]), min_value=-2.0,
    ),
}

_ALIASES = {"sphere": "dejong_sphere", "dejong": "dejong_sphere"}


def _resolve(name: str) -> _Definition:
    key = _ALIASES.get(name, name)
    try:
        return _REGISTRY[key]
    except KeyError:
        raise UnknownBenchmarkError(name) from None


def registry_names() -> list[str]:
    return sorted(_REGISTRY)


def dim_constraint(name: str) -> str:
    d = _resolve(name)
    if d.fixed_dim is not None:
        return f"d={d.fixed_dim}"
    return f"d>={d.min_dim}"


def benchmark_spec(name: str, dim: Optional[int] = None) -> BenchmarkSpec:
    """Build the registry entry for `name` at dimension `dim`.

    Raises UnknownBenchmarkError for unregistered names and ValueError for
    dimensions the function does not support.
    """
    d = _resolve(name)
    if dim is None:
        dim = d.default_dim
    if d.fixed_dim is not None and dim != d.fixed_dim:
        raise ValueError(f"{name} is only defined for d={d.fixed_dim}, got d={dim}")
    if dim < d.min_dim:
        raise ValueError(f"{name} requires d>={d.min_dim}, got d={dim}")
    argmin = d.argmin(dim) if d.argmin is not None else None
    if argmin is None:
        known_min = None
    elif d.min_value is not None:
        known_min = d.min_value
    else:
        known_min = float(d.fn(argmin))
    canonical = _ALIASES.get(name, name)
    objective = Objective(
        name=canonical,
        dim=dim,
        bounds=Bounds.cube(d.lo, d.hi, dim),
        fn=d.fn,
        known_min=known_min,
        known_argmin=argmin,
    )
    return BenchmarkSpec(canonical, objective, d.default_dim, d.citation)


def evaluate_benchmark(name: str, x: Vector) -> float:
    """Evaluate a registered function at x, validating the dimension."""
    d = _resolve(name)
    x = np.asarray(x, dtype=float)
    if d.fixed_dim is not None and x.size != d.fixed_dim:
        raise ValueError(f"{name} is only defined for d={d.fixed_dim}, got d={x.size}")
    if x.size < d.min_dim:
        raise ValueError(f"{name} requires d>={d.min_dim}, got d={x.size}")
    return float(d.fn(x))
