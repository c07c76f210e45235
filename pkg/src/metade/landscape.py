"""Landscape diagnostics: fitness-distance correlation and ruggedness.

Both metrics operate on plain sampled data so they can be unit-tested on
synthetic series: a uniform sample with distances to the known optimum
for FDC, and a fixed-step random walk for the ruggedness entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ConfigurationError, UndefinedMetricError

_LOG6 = math.log(6.0)

MIN_FDC_SAMPLES = 30
MIN_WALK_STEPS = 100

SAMPLE_ROLE = "landscape-sample"
WALK_ROLE = "landscape-walk"


@dataclass(frozen=True)
class LandscapeSample:
    """Uniform sample of a problem: points, fitness, distance to optimum."""

    points: np.ndarray
    fitness: np.ndarray
    distances: np.ndarray

    def __post_init__(self) -> None:
        n = self.points.shape[0]
        if n < MIN_FDC_SAMPLES:
            raise ConfigurationError(f"need at least {MIN_FDC_SAMPLES} samples, got {n}")
        if self.fitness.shape != (n,) or self.distances.shape != (n,):
            raise ConfigurationError("fitness and distances must have one entry per point")
        if np.any(self.distances < 0.0):
            raise ConfigurationError("distances must be non-negative")


def sample_landscape(problem, n: int, rng: np.random.Generator) -> LandscapeSample:
    """Uniform sample over the box with Euclidean distances to the optimum."""
    X = problem.bounds.sample(rng, n)
    f = problem.evaluate(X)
    diff = X - problem.optimum_x
    d = np.sqrt(np.einsum("nj,nj->n", diff, diff))
    return LandscapeSample(points=X, fitness=f, distances=d)


def fdc(sample: LandscapeSample) -> float:
    """Pearson correlation between fitness and distance to the optimum.

    +1 means fitness grows perfectly with distance (easy, funnel-shaped);
    values near 0 or below flag deceptive structure.  Computed so that a
    sample with fitness identical (or exactly opposite) to distance
    yields exactly +/-1.0.
    """
    ef = sample.fitness - sample.fitness.mean()
    ed = sample.distances - sample.distances.mean()
    denom = math.sqrt(np.dot(ef, ef) * np.dot(ed, ed))
    if denom == 0.0:
        raise UndefinedMetricError("fitness-distance correlation undefined: zero variance")
    return float(np.dot(ef, ed) / denom)


@dataclass(frozen=True)
class WalkSeries:
    """Fitness values along a fixed-step random walk."""

    values: np.ndarray
    step_length: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.shape[0] < 2:
            raise ConfigurationError("a walk needs at least two fitness values")
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("walk fitness values must be finite")
        object.__setattr__(self, "values", v)


def random_walk(
    problem, steps: int, step_fraction: float, rng: np.random.Generator
) -> WalkSeries:
    """Isotropic random walk clipped to the box.

    Each step moves a fixed length (``step_fraction`` of the box
    diagonal) in a uniformly random direction.
    """
    if steps < MIN_WALK_STEPS:
        raise ConfigurationError(f"walk needs at least {MIN_WALK_STEPS} steps, got {steps}")
    if not (0.0 < step_fraction <= 1.0):
        raise ConfigurationError(f"step_fraction must lie in (0, 1], got {step_fraction}")
    b = problem.bounds
    step_len = step_fraction * b.diagonal
    x = b.sample(rng, 1)[0]
    values = np.empty(steps + 1)
    values[0] = problem.evaluate_one(x)
    for t in range(1, steps + 1):
        direction = rng.standard_normal(problem.dim)
        norm = math.sqrt(np.dot(direction, direction))
        if norm == 0.0:  # astronomically unlikely, but keep the step defined
            direction[0] = 1.0
            norm = 1.0
        x = np.minimum(np.maximum(x + (step_len / norm) * direction, b.lb), b.ub)
        values[t] = problem.evaluate_one(x)
    return WalkSeries(values=values, step_length=step_len)


def default_epsilons(walk: WalkSeries, count: int = 32) -> np.ndarray:
    """Geometric threshold grid from 1e-8 of the largest step change up to
    the largest step change itself."""
    r = float(np.max(np.abs(np.diff(walk.values))))
    if r == 0.0:
        return np.array([0.0])
    return np.geomspace(1e-8 * r, r, count)


def _entropy_at(diffs: np.ndarray, eps: float) -> float:
    s = np.zeros(diffs.shape[0], dtype=np.int64)
    s[diffs > eps] = 1
    s[diffs < -eps] = -1
    a, b = s[:-1], s[1:]
    change = a != b
    if not change.any():
        return 0.0
    total = a.shape[0]
    _, counts = np.unique(a[change] * 3 + b[change], return_counts=True)
    p = counts / total
    return float(-np.sum(p * (np.log(p) / _LOG6)))


def rie(walk: WalkSeries, epsilons: np.ndarray | None = None) -> float:
    """Ruggedness of the walk as a base-6 information entropy.

    Consecutive fitness changes are symbolized into down/flat/up by a
    threshold; the entropy of unequal symbol pairs is taken and the
    maximum over the threshold grid returned.  0 means no rugged
    transitions at any scale (e.g. a constant walk); a perfectly
    alternating walk scores log6(2) ~= 0.3869.
    """
    if epsilons is None:
        epsilons = default_epsilons(walk)
    eps = np.atleast_1d(np.asarray(epsilons, dtype=np.float64))
    if eps.size == 0:
        raise ConfigurationError("need at least one epsilon threshold")
    if np.any(eps < 0.0):
        raise ConfigurationError("epsilon thresholds must be non-negative")
    diffs = np.diff(walk.values)
    return max(_entropy_at(diffs, float(e)) for e in eps)
