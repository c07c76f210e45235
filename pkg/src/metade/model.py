"""Shared datatypes and exceptions for the two-tier DE engine."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class MetadeError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(MetadeError):
    """A parameter or combination of parameters is invalid."""


class StrategyParseError(ConfigurationError):
    """A strategy name string could not be parsed."""


class BudgetError(MetadeError):
    """The evaluation budget cannot accommodate even a minimal run."""


class EvaluationError(MetadeError):
    """A problem returned a non-finite fitness value."""


class UndefinedMetricError(MetadeError):
    """A landscape metric is undefined for the given sample (e.g. zero variance)."""


def _readonly(a: np.ndarray, dtype=np.float64) -> np.ndarray:
    out = np.array(a, dtype=dtype, order="C", copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned box constraints, lower strictly below upper per dimension."""

    lb: np.ndarray
    ub: np.ndarray

    def __post_init__(self) -> None:
        lb = _readonly(np.atleast_1d(self.lb))
        ub = _readonly(np.atleast_1d(self.ub))
        if lb.shape != ub.shape or lb.ndim != 1:
            raise ConfigurationError(f"bounds shapes differ: {lb.shape} vs {ub.shape}")
        if not np.all(lb < ub):
            raise ConfigurationError("each lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lb", lb)
        object.__setattr__(self, "ub", ub)

    @classmethod
    def cube(cls, low: float, high: float, dim: int) -> "Bounds":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lb.shape[0]

    @property
    def span(self) -> np.ndarray:
        return self.ub - self.lb

    @property
    def diagonal(self) -> float:
        return float(np.sqrt(np.dot(self.span, self.span)))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Uniform points in the box, one row per point."""
        return self.lb + rng.random((n, self.dim)) * self.span

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lb) and np.all(x <= self.ub))


# Categorical code tables for the parameterized DE.  Base-vector codes are
# shared by the left and right slots of the directional mutation.
BASE_RAND = 1
BASE_BEST = 2
BASE_PBEST = 3
BASE_CURRENT = 4

CROSS_BIN = 1
CROSS_EXP = 2
CROSS_ARITH = 3

_BASE_CODES = (BASE_RAND, BASE_BEST, BASE_PBEST, BASE_CURRENT)
_CROSS_CODES = (CROSS_BIN, CROSS_EXP, CROSS_ARITH)
_DIFF_COUNTS = (1, 2, 3, 4)


@dataclass(frozen=True)
class HyperConfig:
    """One fully specified DE variant: scale factor, crossover rate and the
    four categorical choices (left/right base vector, number of difference
    pairs, crossover operator)."""

    F: float
    CR: float
    bl: int
    br: int
    dn: int
    cs: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.F <= 1.0) or not math.isfinite(self.F):
            raise ConfigurationError(f"F must lie in [0, 1], got {self.F}")
        if not (0.0 <= self.CR <= 1.0) or not math.isfinite(self.CR):
            raise ConfigurationError(f"CR must lie in [0, 1], got {self.CR}")
        if self.bl not in _BASE_CODES:
            raise ConfigurationError(f"bl must be one of {_BASE_CODES}, got {self.bl}")
        if self.br not in _BASE_CODES:
            raise ConfigurationError(f"br must be one of {_BASE_CODES}, got {self.br}")
        if self.dn not in _DIFF_COUNTS:
            raise ConfigurationError(f"dn must be one of {_DIFF_COUNTS}, got {self.dn}")
        if self.cs not in _CROSS_CODES:
            raise ConfigurationError(f"cs must be one of {_CROSS_CODES}, got {self.cs}")

    @property
    def directional(self) -> bool:
        """Whether the mutation uses a scaled step from the left toward the
        right base vector.  Equal codes collapse to a single base term."""
        return self.bl != self.br

    @property
    def strategy(self) -> tuple[int, int, int, int]:
        return (self.bl, self.br, self.dn, self.cs)

    @property
    def strategy_name(self) -> str:
        from .strategies import decode_strategy_name

        return decode_strategy_name(self.bl, self.br, self.dn, self.cs)

    @classmethod
    def from_strategy(cls, name: str, F: float, CR: float) -> "HyperConfig":
        from .strategies import encode_strategy

        bl, br, dn, cs = encode_strategy(name)
        return cls(F=F, CR=CR, bl=bl, br=br, dn=dn, cs=cs)


@dataclass(frozen=True)
class Population:
    """Points plus their fitness, with the incumbent best precomputed.

    Ties on the minimum resolve to the lowest index.
    """

    X: np.ndarray
    fitness: np.ndarray
    best_index: int = field(init=False)

    def __post_init__(self) -> None:
        X = np.ascontiguousarray(self.X, dtype=np.float64)
        f = np.ascontiguousarray(self.fitness, dtype=np.float64)
        if X.ndim != 2:
            raise ConfigurationError(f"population X must be 2-D, got shape {X.shape}")
        if f.shape != (X.shape[0],):
            raise ConfigurationError(
                f"fitness shape {f.shape} does not match population of {X.shape[0]} rows"
            )
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "fitness", f)
        object.__setattr__(self, "best_index", int(np.argmin(f)))

    def __len__(self) -> int:
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    @property
    def best_fitness(self) -> float:
        return float(self.fitness[self.best_index])

    @property
    def best_x(self) -> np.ndarray:
        return self.X[self.best_index].copy()


@dataclass(frozen=True)
class RunBudget:
    """Stop conditions; at least one must be given.

    ``max_fes`` counts fitness evaluations, ``max_wall_ms`` wall-clock
    milliseconds.  ``max_generations`` applies to whichever loop the budget
    is handed to (meta-level generations for the two-tier run).
    """

    max_generations: int | None = None
    max_fes: int | None = None
    max_wall_ms: float | None = None

    def __post_init__(self) -> None:
        if self.max_generations is None and self.max_fes is None and self.max_wall_ms is None:
            raise ConfigurationError("budget needs max_generations, max_fes or max_wall_ms")
        if self.max_generations is not None and self.max_generations < 1:
            raise ConfigurationError(f"max_generations must be >= 1, got {self.max_generations}")
        if self.max_fes is not None and self.max_fes < 1:
            raise ConfigurationError(f"max_fes must be >= 1, got {self.max_fes}")
        if self.max_wall_ms is not None and self.max_wall_ms <= 0:
            raise ConfigurationError(f"max_wall_ms must be positive, got {self.max_wall_ms}")


@dataclass(frozen=True)
class ConvergenceRecord:
    """One row of a convergence log."""

    generation: int
    best_fitness: float
    cumulative_fes: int
    elapsed_ms: float
