"""Meta-level DE that evolves executor hyperparameters.

A 6-gene genome (F, CR, bl, br, dn, cs in a continuous box) is decoded
into a full executor configuration; its fitness is the best value the
executor reaches on the target problem.  All executors in every
meta-generation share one fixed derived seed, so a genome's fitness is a
deterministic function of the genome alone — evaluated once, never
re-sampled — and the meta search reduces to plain DE/rand/1/bin over the
genome box with greedy replacement (incumbents start at +inf, so the
whole first batch of trials is adopted).

The final meta-generation runs each executor five times longer, turning
the last sweep into a polish phase; with an FE or wall-clock budget the
power-up fires early enough to fit inside the budget.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .backend import kernels
from .model import (
    Bounds,
    BudgetError,
    ConfigurationError,
    ConvergenceRecord,
    HyperConfig,
    RunBudget,
)
from .pde import DEFAULT_P_BEST, crossover_binomial, run_pde
from .rng import stream

META_F = 0.5
META_CR = 0.9
POWER_FACTOR = 5

META_LB = np.array([0.0, 0.0, 1.0, 1.0, 1.0, 1.0])
META_UB = np.array([1.0, 1.0, 5.0, 5.0, 5.0, 4.0])
META_BOUNDS = Bounds(META_LB, META_UB)

META_INIT_ROLE = "meta-init"
META_GEN_ROLE = "meta-gen"

# Executors use a seed derived (not equal) to the meta seed so their
# streams can never alias meta-level draws.
_EXECUTOR_SEED_TAG = 0x9E3779B97F4A7C15

# Smallest executor population that can run every dn in 1..4 (needs
# 2*dn + 2 distinct partners per row).
MIN_EXEC_POP = 11


def derive_executor_seed(master_seed: int) -> int:
    return (master_seed ^ _EXECUTOR_SEED_TAG) & ((1 << 64) - 1)


def decode_params(genome: np.ndarray) -> HyperConfig:
    """Map a 6-gene genome to an executor configuration.

    Continuous genes pass through as F and CR; categorical genes take the
    floor, with the upper box edge folded onto the top category so every
    point of the closed box decodes to a valid configuration.
    """
    v = np.asarray(genome, dtype=np.float64).ravel()
    if v.shape != (6,):
        raise ConfigurationError(f"genome must have 6 entries, got shape {v.shape}")
    v = np.minimum(np.maximum(v, META_LB), META_UB)
    cats = np.floor(v[2:6]).astype(np.int64)
    return HyperConfig(
        F=float(v[0]),
        CR=float(v[1]),
        bl=int(min(cats[0], 4)),
        br=int(min(cats[1], 4)),
        dn=int(min(cats[2], 4)),
        cs=int(min(cats[3], 3)),
    )


@dataclass
class MetaState:
    """Mutable meta-population: genomes with their one-shot fitnesses."""

    genomes: np.ndarray
    fitness: np.ndarray
    generation: int = 0


def init_meta_state(meta_pop_size: int, master_seed: int) -> MetaState:
    if meta_pop_size < 4:
        raise ConfigurationError(
            f"meta_pop_size must be >= 4 for rand/1 mutation, got {meta_pop_size}"
        )
    genomes = META_BOUNDS.sample(stream(master_seed, META_INIT_ROLE), meta_pop_size)
    return MetaState(genomes=genomes, fitness=np.full(meta_pop_size, math.inf))


def evolver_step(state: MetaState, rng: np.random.Generator) -> np.ndarray:
    """One batch of meta trials: rand/1 mutation, binomial crossover with
    the fixed meta settings, clamped back to the genome box."""
    NP = state.genomes.shape[0]
    if NP < 4:
        raise ConfigurationError(f"meta population of {NP} cannot sample 3 distinct partners")
    u = rng.random((NP, 3))
    idx = kernels.sample_index_matrix(u)
    V = kernels.mutate(
        state.genomes,
        np.ascontiguousarray(idx[:, 0]),
        None,
        np.ascontiguousarray(idx[:, 1:3]),
        META_F,
    )
    U = crossover_binomial(V, state.genomes, META_CR, rng)
    return kernels.clamp(U, META_LB, META_UB)


def _run_trial(args):
    genome, problem, pop_size, generations, seed, p_best = args
    config = decode_params(genome)
    result = run_pde(problem, config, pop_size, generations, seed, p_best=p_best)
    return result.best_fitness, result.best_x, result.fe_count


def _evaluate_batch_full(
    trials: np.ndarray,
    problem,
    exec_pop_size: int,
    exec_generations: int,
    executor_seed: int,
    powered: bool,
    workers: int,
    p_best: float,
):
    gens = POWER_FACTOR * exec_generations if powered else exec_generations
    jobs = [
        (trials[i].copy(), problem, exec_pop_size, gens, executor_seed, p_best)
        for i in range(trials.shape[0])
    ]
    if workers <= 1:
        rows = [_run_trial(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_run_trial, jobs))
    fits = np.array([r[0] for r in rows])
    xs = [r[1] for r in rows]
    fes = int(sum(r[2] for r in rows))
    return fits, xs, fes


def evaluate_batch(
    trials: np.ndarray,
    problem,
    exec_pop_size: int,
    exec_generations: int,
    executor_seed: int,
    powered: bool = False,
    workers: int = 1,
    p_best: float = DEFAULT_P_BEST,
) -> np.ndarray:
    """Fitness of each genome row: best value of its executor run.

    Every row runs with the same ``executor_seed``, so results depend
    only on the row's genes — identical rows give identical fitness, and
    the worker count never changes the outcome, only the wall time.
    """
    trials = np.atleast_2d(np.asarray(trials, dtype=np.float64))
    if trials.shape[1] != 6:
        raise ConfigurationError(f"trials must be (n, 6), got {trials.shape}")
    fits, _, _ = _evaluate_batch_full(
        trials, problem, exec_pop_size, exec_generations, executor_seed, powered, workers, p_best
    )
    return fits


@dataclass(frozen=True)
class MetaRunResult:
    best_config: HyperConfig
    best_fitness: float
    best_x: np.ndarray | None
    total_fes: int
    records: list[ConvergenceRecord] = field(repr=False)
    state: MetaState = field(repr=False)


def metade_run(
    problem,
    meta_pop_size: int,
    meta_generations: int,
    exec_pop_size: int,
    exec_generations: int,
    master_seed: int,
    budget: RunBudget | None = None,
    workers: int = 1,
    p_best: float = DEFAULT_P_BEST,
    on_generation: Callable[[ConvergenceRecord], object] | None = None,
) -> MetaRunResult:
    """Full two-tier run; returns the best executor outcome and the genome
    that produced it.

    The loop always ends with a powered generation: either the
    generation cap arrives, or the FE/wall budget would not fit another
    normal-plus-powered round, in which case the power-up fires
    immediately as the terminating act.  ``on_generation`` observes each
    meta-generation record (its return value is ignored — the power-up
    contract would break on an arbitrary early stop).
    """
    if meta_generations < 1:
        raise ConfigurationError(f"meta_generations must be >= 1, got {meta_generations}")
    if exec_generations < 1:
        raise ConfigurationError(f"exec_generations must be >= 1, got {exec_generations}")
    if exec_pop_size < MIN_EXEC_POP:
        raise ConfigurationError(
            f"exec_pop_size must be >= {MIN_EXEC_POP} so every difference-pair count is "
            f"runnable, got {exec_pop_size}"
        )
    if budget is None:
        budget = RunBudget(max_generations=meta_generations)
    gen_limit = meta_generations
    if budget.max_generations is not None:
        gen_limit = min(gen_limit, budget.max_generations)

    cost_normal = meta_pop_size * exec_pop_size * (exec_generations + 1)
    cost_powered = meta_pop_size * exec_pop_size * (POWER_FACTOR * exec_generations + 1)
    if budget.max_fes is not None and budget.max_fes < cost_powered:
        raise BudgetError(
            f"max_fes={budget.max_fes} cannot cover the final powered meta-generation "
            f"({cost_powered} evaluations); increase the budget"
        )

    executor_seed = derive_executor_seed(master_seed)
    state = init_meta_state(meta_pop_size, master_seed)

    t0 = time.perf_counter()
    records: list[ConvergenceRecord] = []
    normal_gen_ms: list[float] = []
    best_f = math.inf
    best_x: np.ndarray | None = None
    best_genome = state.genomes[0].copy()
    fes = 0
    g = 0
    while True:
        g += 1
        elapsed_ms = (time.perf_counter() - t0) * 1e3
        powered = g >= gen_limit
        if not powered and budget.max_fes is not None:
            powered = fes + cost_normal + cost_powered > budget.max_fes
        if not powered and budget.max_wall_ms is not None and normal_gen_ms:
            mean_ms = sum(normal_gen_ms) / len(normal_gen_ms)
            powered = elapsed_ms + POWER_FACTOR * mean_ms > budget.max_wall_ms

        t_gen = time.perf_counter()
        rng = stream(master_seed, META_GEN_ROLE, g)
        trials = evolver_step(state, rng)
        fits, xs, batch_fes = _evaluate_batch_full(
            trials, problem, exec_pop_size, exec_generations, executor_seed, powered,
            workers, p_best,
        )
        fes += batch_fes
        for i in range(meta_pop_size):
            if fits[i] < best_f:
                best_f = float(fits[i])
                best_x = xs[i]
                best_genome = trials[i].copy()
        win = fits <= state.fitness
        state.genomes[win] = trials[win]
        state.fitness[win] = fits[win]
        state.generation = g
        if not powered:
            normal_gen_ms.append((time.perf_counter() - t_gen) * 1e3)

        record = ConvergenceRecord(
            generation=g,
            best_fitness=best_f,
            cumulative_fes=fes,
            elapsed_ms=(time.perf_counter() - t0) * 1e3,
        )
        records.append(record)
        if on_generation is not None:
            on_generation(record)
        if powered:
            break

    return MetaRunResult(
        best_config=decode_params(best_genome),
        best_fitness=best_f,
        best_x=best_x,
        total_fes=fes,
        records=records,
        state=state,
    )
