"""Fully parameterized differential evolution (the execution tier).

One generation draws from a per-generation named stream in a fixed
protocol, so a run is a pure function of (problem, config, sizes, seed):

1. index uniforms, shape (NP, 2*dn + 2), turned into a matrix of
   mutually distinct partner indices excluding each row's own index
   (column 0 feeds a rand left base, column 1 a rand right base, the
   remaining 2*dn columns the difference pairs — drawn identically no
   matter which bases the strategy actually uses);
2. left-base pick uniforms (NP,) only if the left base is pbest;
3. right-base pick uniforms (NP,) only if the right base is pbest and
   the strategy is directional;
4. crossover draws: binomial takes a forced-column uniform (NP,) then a
   mask (NP, D); exponential a start uniform (NP,) then a block-length
   uniform (NP,); arithmetic a single mixing uniform (NP,).

Integer draws always derive as ``floor(u * n)``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .backend import kernels
from .model import (
    BASE_BEST,
    BASE_CURRENT,
    BASE_PBEST,
    BASE_RAND,
    CROSS_ARITH,
    CROSS_BIN,
    CROSS_EXP,
    Bounds,
    ConfigurationError,
    ConvergenceRecord,
    HyperConfig,
    Population,
)
from .rng import stream

DEFAULT_P_BEST = 0.1

INIT_ROLE = "pde-init"
GEN_ROLE = "pde-gen"


@dataclass(frozen=True)
class MutationContext:
    """Resolved index material for one generation's mutation."""

    indices: np.ndarray
    base_left: np.ndarray
    base_right: np.ndarray | None
    diff: np.ndarray


def _resolve_base(
    code: int, rand_col: np.ndarray, pop: Population, rng: np.random.Generator, p_best: float
) -> np.ndarray:
    NP = len(pop)
    if code == BASE_RAND:
        return np.ascontiguousarray(rand_col)
    if code == BASE_BEST:
        return np.full(NP, pop.best_index, dtype=np.int64)
    if code == BASE_PBEST:
        pool = math.ceil(p_best * NP)
        order = np.argsort(pop.fitness, kind="stable")
        picks = (rng.random(NP) * pool).astype(np.int64)
        return np.ascontiguousarray(order[picks])
    if code == BASE_CURRENT:
        return np.arange(NP, dtype=np.int64)
    raise ConfigurationError(f"unknown base-vector code {code}")


def build_mutation_context(
    pop: Population,
    config: HyperConfig,
    rng: np.random.Generator,
    p_best: float = DEFAULT_P_BEST,
) -> MutationContext:
    """Draw index material for one generation (steps 1-3 of the protocol)."""
    NP = len(pop)
    k = 2 * config.dn + 2
    if NP < k + 1:
        raise ConfigurationError(
            f"population of {NP} cannot supply {k} distinct partners per row; "
            f"need pop_size >= {k + 1} for dn={config.dn}"
        )
    if not (0.0 < p_best <= 1.0):
        raise ConfigurationError(f"p_best must lie in (0, 1], got {p_best}")
    u = rng.random((NP, k))
    idx = kernels.sample_index_matrix(u)
    base_left = _resolve_base(config.bl, idx[:, 0], pop, rng, p_best)
    base_right = None
    if config.directional:
        base_right = _resolve_base(config.br, idx[:, 1], pop, rng, p_best)
    diff = np.ascontiguousarray(idx[:, 2 : 2 + 2 * config.dn])
    return MutationContext(indices=idx, base_left=base_left, base_right=base_right, diff=diff)


def mutate_with_context(pop: Population, config: HyperConfig, ctx: MutationContext) -> np.ndarray:
    return kernels.mutate(pop.X, ctx.base_left, ctx.base_right, ctx.diff, config.F)


def mutate_batch(
    pop: Population,
    config: HyperConfig,
    rng: np.random.Generator,
    p_best: float = DEFAULT_P_BEST,
) -> np.ndarray:
    """Mutant matrix for the whole population."""
    return mutate_with_context(pop, config, build_mutation_context(pop, config, rng, p_best))


def exponential_block_length(u: np.ndarray, cr: float, d: int) -> np.ndarray:
    """Block lengths for exponential crossover from uniforms.

    The first gene always copies; each further copy continues with
    probability CR, truncated at the dimension: P(L=l) = (1-CR)*CR^(l-1)
    for l < d and P(L=d) = CR^(d-1).  Inverse-CDF form:
    ``L = min(d, 1 + floor(ln u / ln CR))``.
    """
    if cr <= 0.0:
        return np.ones(u.shape[0], dtype=np.int64)
    if cr >= 1.0:
        return np.full(u.shape[0], d, dtype=np.int64)
    with np.errstate(divide="ignore"):
        raw = 1.0 + np.floor(np.log(u) / np.log(cr))
    return np.minimum(raw, float(d)).astype(np.int64)


def crossover_binomial(
    V: np.ndarray, X: np.ndarray, cr: float, rng: np.random.Generator
) -> np.ndarray:
    NP, D = V.shape
    jrand = (rng.random(NP) * D).astype(np.int64)
    mask_u = rng.random((NP, D))
    return kernels.crossover_bin(V, X, cr, mask_u, jrand)


def crossover_exponential(
    V: np.ndarray, X: np.ndarray, cr: float, rng: np.random.Generator
) -> np.ndarray:
    NP, D = V.shape
    start = (rng.random(NP) * D).astype(np.int64)
    length = exponential_block_length(rng.random(NP), cr, D)
    return kernels.crossover_exp(V, X, start, length)


def crossover_arithmetic(V: np.ndarray, X: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    NP = V.shape[0]
    K = rng.random(NP)
    return kernels.crossover_arith(V, X, K)


def _crossover(
    V: np.ndarray, X: np.ndarray, config: HyperConfig, rng: np.random.Generator
) -> np.ndarray:
    if config.cs == CROSS_BIN:
        return crossover_binomial(V, X, config.CR, rng)
    if config.cs == CROSS_EXP:
        return crossover_exponential(V, X, config.CR, rng)
    if config.cs == CROSS_ARITH:
        return crossover_arithmetic(V, X, rng)
    raise ConfigurationError(f"unknown crossover code {config.cs}")


def clamp_to_bounds(U: np.ndarray, bounds: Bounds) -> np.ndarray:
    return kernels.clamp(U, bounds.lb, bounds.ub)


def select(pop: Population, U: np.ndarray, fitness_U: np.ndarray) -> Population:
    """Greedy one-to-one replacement; the trial wins ties."""
    better = fitness_U <= pop.fitness
    X = np.where(better[:, None], U, pop.X)
    f = np.where(better, fitness_U, pop.fitness)
    return Population(X, f)


class PdeResult(NamedTuple):
    best_fitness: float
    best_x: np.ndarray
    fe_count: int
    generations: int


def init_population(problem, pop_size: int, seed: int) -> Population:
    """Uniform initial population from the run's init stream."""
    rng = stream(seed, INIT_ROLE)
    X = problem.bounds.sample(rng, pop_size)
    return Population(X, problem.evaluate(X))


def run_pde(
    problem,
    config: HyperConfig,
    pop_size: int,
    generations: int,
    seed: int,
    p_best: float = DEFAULT_P_BEST,
    on_generation: Callable[[ConvergenceRecord], bool | None] | None = None,
) -> PdeResult:
    """Run one DE on ``problem`` and return its best point.

    Deterministic: the same arguments always produce the same result,
    bit for bit.  ``on_generation`` receives a record after each
    generation's selection; returning truthy stops the run early.
    Selection is elitist, so the logged best fitness never increases.
    """
    if generations < 1:
        raise ConfigurationError(f"generations must be >= 1, got {generations}")
    k = 2 * config.dn + 2
    if pop_size < k + 1:
        raise ConfigurationError(
            f"pop_size {pop_size} too small for dn={config.dn}; need >= {k + 1}"
        )
    t0 = time.perf_counter()
    pop = init_population(problem, pop_size, seed)
    fes = pop_size
    done = 0
    for g in range(1, generations + 1):
        rng = stream(seed, GEN_ROLE, g)
        ctx = build_mutation_context(pop, config, rng, p_best)
        V = mutate_with_context(pop, config, ctx)
        U = _crossover(V, pop.X, config, rng)
        U = clamp_to_bounds(U, problem.bounds)
        fitness_U = problem.evaluate(U)
        pop = select(pop, U, fitness_U)
        fes += pop_size
        done = g
        if on_generation is not None:
            record = ConvergenceRecord(
                generation=g,
                best_fitness=pop.best_fitness,
                cumulative_fes=fes,
                elapsed_ms=(time.perf_counter() - t0) * 1e3,
            )
            if on_generation(record):
                break
    return PdeResult(
        best_fitness=pop.best_fitness,
        best_x=pop.best_x,
        fe_count=fes,
        generations=done,
    )
