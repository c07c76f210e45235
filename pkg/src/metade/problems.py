"""Benchmark problems with batched, deterministic evaluation.

Every function evaluates a whole (N, D) batch at once but accumulates
within each row in fixed low-to-high index order (cumsum/cumprod), so a
row's value is independent of batch size or row order.  Shift/rotation
variants share the same guarantee: the rotation is applied with einsum,
which — unlike BLAS matmul — computes each output row identically
whether it arrives alone or inside a larger batch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import Bounds, ConfigurationError, EvaluationError, _readonly
from .rng import stream

_TWO_PI = 2.0 * math.pi

# Location of the 1-D minimum of 418.9828872724339 - x*sin(sqrt(|x|)) on
# [-500, 500], rounded to the nearest double.
SCHWEFEL_X_OPT = 420.96874635998205
_SCHWEFEL_CONST = 418.9828872724339

TRANSFORM_ROLE = "problem-transform"


def _seqsum(T: np.ndarray) -> np.ndarray:
    """Row sums taken strictly left to right."""
    return np.cumsum(T, axis=1)[:, -1]


def sphere(X: np.ndarray) -> np.ndarray:
    return _seqsum(X * X)


def rastrigin(X: np.ndarray) -> np.ndarray:
    terms = X * X - 10.0 * np.cos(_TWO_PI * X)
    return 10.0 * X.shape[1] + _seqsum(terms)


def rosenbrock(X: np.ndarray) -> np.ndarray:
    head = X[:, :-1]
    d = X[:, 1:] - head * head
    o = 1.0 - head
    return _seqsum(100.0 * (d * d) + o * o)


def ackley(X: np.ndarray) -> np.ndarray:
    D = X.shape[1]
    s1 = _seqsum(X * X)
    s2 = _seqsum(np.cos(_TWO_PI * X))
    return -20.0 * np.exp(-0.2 * np.sqrt(s1 / D)) - np.exp(s2 / D) + 20.0 + math.e


def griewank(X: np.ndarray) -> np.ndarray:
    D = X.shape[1]
    s = _seqsum(X * X) / 4000.0
    scale = np.sqrt(np.arange(1.0, D + 1.0))
    p = np.cumprod(np.cos(X / scale), axis=1)[:, -1]
    return s - p + 1.0


def schwefel(X: np.ndarray) -> np.ndarray:
    terms = X * np.sin(np.sqrt(np.abs(X)))
    return _SCHWEFEL_CONST * X.shape[1] - _seqsum(terms)


@dataclass(frozen=True)
class _BaseSpec:
    fn: Callable[[np.ndarray], np.ndarray]
    low: float
    high: float
    optimum: Callable[[int], np.ndarray]


_BASES: dict[str, _BaseSpec] = {
    "sphere": _BaseSpec(sphere, -100.0, 100.0, np.zeros),
    "rastrigin": _BaseSpec(rastrigin, -100.0, 100.0, np.zeros),
    "rosenbrock": _BaseSpec(rosenbrock, -100.0, 100.0, np.ones),
    "ackley": _BaseSpec(ackley, -100.0, 100.0, np.zeros),
    "griewank": _BaseSpec(griewank, -100.0, 100.0, np.zeros),
    "schwefel": _BaseSpec(schwefel, -500.0, 500.0, lambda d: np.full(d, SCHWEFEL_X_OPT)),
}


@dataclass(frozen=True)
class Problem:
    """A (possibly shifted and rotated) benchmark instance.

    Transformed instances evaluate ``base(M @ (x - shift) + base_target)``
    so the minimum sits at ``shift`` with unchanged optimal value.
    Evaluation is stateless; callers do their own FE accounting.
    """

    name: str
    base: str
    dim: int
    bounds: Bounds
    optimum_x: np.ndarray
    optimum_f: float
    shift: np.ndarray | None = None
    rotation: np.ndarray | None = None
    base_target: np.ndarray | None = None

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Fitness for each row of ``X``; accepts a single (D,) point too."""
        Z = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if Z.shape[1] != self.dim:
            raise ConfigurationError(f"expected points of dimension {self.dim}, got {Z.shape[1]}")
        if self.shift is not None:
            Z = Z - self.shift
        if self.rotation is not None:
            Z = np.einsum("jk,nk->nj", self.rotation, Z)
        if self.base_target is not None:
            Z = Z + self.base_target
        f = _BASES[self.base].fn(Z)
        if not np.all(np.isfinite(f)):
            bad = int(np.argmin(np.isfinite(f)))
            raise EvaluationError(f"non-finite fitness {f[bad]!r} at row {bad} of {self.name}")
        return f

    def evaluate_one(self, x: np.ndarray) -> float:
        return float(self.evaluate(x)[0])

    @property
    def transformed(self) -> bool:
        return self.shift is not None or self.rotation is not None


def make_function(name: str, dim: int) -> Problem:
    """Untransformed instance of a named base function."""
    if name not in _BASES:
        raise ConfigurationError(f"unknown problem {name!r}; choose from {sorted(_BASES)}")
    if dim < 2:
        raise ConfigurationError(f"dim must be >= 2, got {dim}")
    entry = _BASES[name]
    x0 = np.asarray(entry.optimum(dim), dtype=np.float64)
    f0 = float(entry.fn(x0[None, :])[0])
    return Problem(
        name=name,
        base=name,
        dim=dim,
        bounds=Bounds.cube(entry.low, entry.high, dim),
        optimum_x=_readonly(x0),
        optimum_f=f0,
    )


def with_transform(problem: Problem, seed: int) -> Problem:
    """Shifted, rotated copy of ``problem`` with a known optimum.

    The shift is drawn uniformly from the central 80% of the box; the
    rotation is the Q factor of a seeded Gaussian matrix with column
    signs fixed, i.e. a deterministic orthogonal matrix.
    """
    if problem.transformed:
        raise ConfigurationError(f"{problem.name} is already transformed")
    rng = stream(seed, TRANSFORM_ROLE)
    b = problem.bounds
    o = b.lb + (0.1 + 0.8 * rng.random(b.dim)) * b.span
    A = rng.standard_normal((problem.dim, problem.dim))
    Q, R = np.linalg.qr(A)
    Q = Q * np.where(np.diag(R) < 0.0, -1.0, 1.0)
    return Problem(
        name=f"{problem.name}@rot",
        base=problem.base,
        dim=problem.dim,
        bounds=b,
        optimum_x=_readonly(o),
        optimum_f=problem.optimum_f,
        shift=_readonly(o),
        rotation=_readonly(Q),
        base_target=_readonly(problem.optimum_x),
    )


def get_problem(name: str, dim: int, transform_seed: int = 0) -> Problem:
    """Registry lookup: ``"rastrigin"`` or ``"rastrigin@rot"`` style names."""
    base, sep, variant = name.partition("@")
    p = make_function(base, dim)
    if not sep:
        return p
    if variant == "rot":
        return with_transform(p, transform_seed)
    raise ConfigurationError(f"unknown problem variant {variant!r} in {name!r}; expected 'rot'")


def list_problems() -> list[str]:
    return sorted(_BASES)
