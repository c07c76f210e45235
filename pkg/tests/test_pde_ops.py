"""Reproduction operators against straight-line scalar recomputation."""

import math

import numpy as np
import pytest

from _reference import censored_geometric_pmf, ref_partner_indices
from metade.backend import kernels
from metade.model import ConfigurationError, HyperConfig, Population
from metade.pde import (
    build_mutation_context,
    crossover_arithmetic,
    crossover_binomial,
    crossover_exponential,
    exponential_block_length,
    mutate_with_context,
    select,
)
from metade.rng import stream


def _pinned_pop(NP=24, D=8, seed=11):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-100.0, 100.0, (NP, D))
    return Population(X, rng.uniform(0.0, 50.0, NP))


def _cfg(bl, br, dn, cs, F=0.6, CR=0.7):
    return HyperConfig(F=F, CR=CR, bl=bl, br=br, dn=dn, cs=cs)


# --- index sampling ---

def test_partner_indices_distinct_in_range_never_self():
    for seed in range(8):
        rng = np.random.default_rng(seed)
        NP = int(rng.integers(12, 60))
        k = int(rng.integers(2, 11))
        u = rng.random((NP, k))
        idx = kernels.sample_index_matrix(u)
        assert idx.shape == (NP, k)
        for i in range(NP):
            row = idx[i].tolist()
            assert len(set(row)) == k          # mutually distinct
            assert i not in row                # never the row itself
            assert all(0 <= v < NP for v in row)


def test_partner_indices_match_reference_rowwise():
    rng = np.random.default_rng(3)
    u = rng.random((40, 10))
    idx = kernels.sample_index_matrix(u)
    for i in range(40):
        assert idx[i].tolist() == ref_partner_indices(i, 40, u[i].tolist())


def test_partner_indices_roughly_uniform():
    # Every partner index should appear with frequency ~1/(NP-1).
    NP, k, reps = 20, 4, 4000
    counts = np.zeros((NP, NP), dtype=np.int64)
    rng = np.random.default_rng(17)
    rows = np.arange(NP)
    for _ in range(reps):
        idx = kernels.sample_index_matrix(rng.random((NP, k)))
        for c in range(k):
            counts[rows, idx[:, c]] += 1
    probs = counts / (reps * k)
    expected = 1.0 / (NP - 1)
    off_diag = probs[~np.eye(NP, dtype=bool)]
    assert np.all(np.abs(off_diag - expected) < 0.25 * expected)
    assert np.all(np.diag(counts) == 0)


def test_too_many_partners_raises():
    with pytest.raises(ValueError):
        kernels.sample_index_matrix(np.random.default_rng(0).random((5, 5)))


# --- mutation ---

@pytest.mark.parametrize("dn", [1, 2, 3, 4])
def test_collapsed_mutation_matches_scalar_loops(dn):
    pop = _pinned_pop()
    cfg = _cfg(1, 1, dn, 1)
    rng = stream(5, "pde-gen", 1)
    ctx = build_mutation_context(pop, cfg, rng)
    V = mutate_with_context(pop, cfg, ctx)
    X = pop.X
    for i in range(len(pop)):
        for j in range(pop.dim):
            acc = X[ctx.diff[i, 0], j] - X[ctx.diff[i, 1], j]
            for t in range(1, dn):
                acc = acc + (X[ctx.diff[i, 2 * t], j] - X[ctx.diff[i, 2 * t + 1], j])
            assert V[i, j] == X[ctx.base_left[i], j] + cfg.F * acc


@pytest.mark.parametrize("bl,br", [(4, 2), (1, 2), (4, 3), (2, 4), (3, 1)])
def test_directional_mutation_matches_scalar_loops(bl, br):
    pop = _pinned_pop()
    cfg = _cfg(bl, br, 2, 1, F=0.45)
    rng = stream(6, "pde-gen", 2)
    ctx = build_mutation_context(pop, cfg, rng)
    assert ctx.base_right is not None
    V = mutate_with_context(pop, cfg, ctx)
    X = pop.X
    for i in range(len(pop)):
        for j in range(pop.dim):
            acc = X[ctx.diff[i, 0], j] - X[ctx.diff[i, 1], j]
            acc = acc + (X[ctx.diff[i, 2], j] - X[ctx.diff[i, 3], j])
            xl = X[ctx.base_left[i], j]
            want = xl + cfg.F * (X[ctx.base_right[i], j] - xl) + cfg.F * acc
            assert V[i, j] == want


def test_equal_base_codes_elide_directional_term():
    # bl == br must not add F*(x_br - x_bl) = 0 arithmetic; the context
    # simply has no right base at all.
    pop = _pinned_pop()
    for code in (1, 2, 3, 4):
        cfg = _cfg(code, code, 1, 1)
        ctx = build_mutation_context(pop, cfg, stream(7, "pde-gen", 3))
        assert ctx.base_right is None


def test_base_resolution_codes():
    pop = _pinned_pop(NP=30)
    rng = stream(8, "pde-gen", 1)
    ctx = build_mutation_context(pop, _cfg(2, 4, 1, 1), rng)
    assert np.all(ctx.base_left == pop.best_index)           # best
    assert np.array_equal(ctx.base_right, np.arange(30))     # current
    rng = stream(8, "pde-gen", 2)
    ctx = build_mutation_context(pop, _cfg(1, 3, 1, 1), rng)
    assert np.array_equal(ctx.base_left, ctx.indices[:, 0])  # rand uses column 0
    pool = math.ceil(0.1 * 30)
    top = set(np.argsort(pop.fitness, kind="stable")[:pool].tolist())
    assert set(ctx.base_right.tolist()) <= top               # pbest from the top slice


def test_pbest_pool_of_one_is_the_best_individual():
    pop = _pinned_pop(NP=10)
    ctx = build_mutation_context(pop, _cfg(3, 3, 1, 1), stream(9, "pde-gen", 1))
    assert np.all(ctx.base_left == pop.best_index)


def test_population_too_small_for_dn_raises():
    pop = _pinned_pop(NP=10)
    with pytest.raises(ConfigurationError):
        build_mutation_context(pop, _cfg(1, 1, 4, 1), stream(0, "pde-gen", 1))
    # dn=4 needs 10 partners, so a population of 11 is the smallest legal size.
    build_mutation_context(_pinned_pop(NP=11), _cfg(1, 1, 4, 1), stream(0, "pde-gen", 1))


# --- crossover draw order and semantics ---

def test_binomial_consumes_jrand_then_mask():
    pop = _pinned_pop()
    V = pop.X + 1.0
    rng = stream(21, "pde-gen", 4)
    U = crossover_binomial(V, pop.X, 0.3, rng)
    replay = stream(21, "pde-gen", 4)
    jrand = (replay.random(len(pop)) * pop.dim).astype(np.int64)
    mask = replay.random((len(pop), pop.dim))
    want = np.where((mask <= 0.3) | (np.arange(pop.dim)[None, :] == jrand[:, None]), V, pop.X)
    assert np.array_equal(U, want)


def test_binomial_forced_column_and_rates():
    pop = _pinned_pop(NP=400, D=10)
    V = pop.X + 1.0
    U0 = crossover_binomial(V, pop.X, 0.0, stream(1, "pde-gen", 1))
    taken = (U0 != pop.X).sum(axis=1)
    assert np.all(taken == 1)  # CR=0 still forces exactly one mutant gene
    U1 = crossover_binomial(V, pop.X, 1.0, stream(1, "pde-gen", 2))
    assert np.array_equal(U1, V)


def test_exponential_consumes_start_then_length():
    pop = _pinned_pop()
    V = pop.X + 1.0
    rng = stream(22, "pde-gen", 5)
    U = crossover_exponential(V, pop.X, 0.6, rng)
    replay = stream(22, "pde-gen", 5)
    start = (replay.random(len(pop)) * pop.dim).astype(np.int64)
    length = exponential_block_length(replay.random(len(pop)), 0.6, pop.dim)
    for i in range(len(pop)):
        block = {(start[i] + l) % pop.dim for l in range(length[i])}
        for j in range(pop.dim):
            assert U[i, j] == (V[i, j] if j in block else pop.X[i, j])


def test_exponential_block_is_contiguous_modulo_d():
    pop = _pinned_pop(NP=300, D=7)
    V = pop.X + 1.0
    U = crossover_exponential(V, pop.X, 0.8, stream(23, "pde-gen", 1))
    for i in range(300):
        mutated = np.flatnonzero(U[i] != pop.X[i])
        L = mutated.size
        assert 1 <= L <= 7
        # Some rotation of the mutated set must be the prefix 0..L-1.
        ok = any(
            set((mutated - s) % 7) == set(range(L)) and len(set((mutated - s) % 7)) == L
            for s in range(7)
        )
        assert ok


def test_exponential_block_length_edges():
    u = np.array([0.0, 1e-300, 0.5, 1.0 - 2**-53])
    assert np.array_equal(exponential_block_length(u, 0.0, 10), [1, 1, 1, 1])
    assert np.array_equal(exponential_block_length(u, 1.0, 10), [10, 10, 10, 10])
    L = exponential_block_length(u, 0.6, 10)
    assert L[0] == 10          # u=0 censors at D
    assert L[1] == 10          # far tail censors at D
    assert L[3] == 1           # u near 1 stops immediately
    # Inverse-CDF boundaries: u just above CR^l gives L = l, just below gives l+1.
    for l in (1, 2, 5, 9):
        edge = 0.6**l
        assert exponential_block_length(np.array([edge * 1.000001]), 0.6, 10)[0] == l
        assert exponential_block_length(np.array([edge * 0.999999]), 0.6, 10)[0] == l + 1


def test_exponential_length_distribution_small():
    n = 100_000
    u = stream(77, "pde-gen", 1).random(n)
    L = exponential_block_length(u, 0.6, 10)
    pmf = censored_geometric_pmf(0.6, 10)
    counts = np.bincount(L, minlength=11)[1:]
    for l in range(1, 11):
        p = pmf[l - 1]
        sigma = math.sqrt(n * p * (1.0 - p))
        assert abs(counts[l - 1] - n * p) <= 3.0 * sigma, f"bin {l} off"


def test_arithmetic_crossover_matches_formula_and_ignores_cr():
    pop = _pinned_pop()
    V = pop.X + 3.0
    rng = stream(24, "pde-gen", 6)
    U = crossover_arithmetic(V, pop.X, rng)
    K = stream(24, "pde-gen", 6).random(len(pop))
    for i in range(len(pop)):
        for j in range(pop.dim):
            assert U[i, j] == pop.X[i, j] + K[i] * (V[i, j] - pop.X[i, j])


def test_arithmetic_crossover_k_extremes():
    pop = _pinned_pop()
    V = pop.X + 3.0
    NP = len(pop)
    assert np.array_equal(kernels.crossover_arith(V, pop.X, np.zeros(NP)), pop.X)
    assert np.array_equal(kernels.crossover_arith(V, pop.X, np.ones(NP)), V)


# --- clamp and selection ---

def test_clamp_projects_onto_box():
    lb = np.array([-1.0, 0.0, 2.0])
    ub = np.array([1.0, 5.0, 3.0])
    U = np.array([[-2.0, 2.5, 10.0], [0.5, -1.0, 2.5]])
    out = kernels.clamp(U, lb, ub)
    assert np.array_equal(out, [[-1.0, 2.5, 3.0], [0.5, 0.0, 2.5]])


def test_selection_trial_wins_ties_and_best_is_monotone():
    pop = Population(np.array([[0.0], [1.0], [2.0]]), np.array([3.0, 1.0, 2.0]))
    U = np.array([[9.0], [8.0], [7.0]])
    fU = np.array([3.0, 2.0, 1.5])
    out = select(pop, U, fU)
    assert out.fitness.tolist() == [3.0, 1.0, 1.5]
    assert out.X[0, 0] == 9.0   # tie: trial replaces incumbent
    assert out.X[1, 0] == 1.0   # worse trial rejected
    assert out.X[2, 0] == 7.0
    assert out.best_fitness <= pop.best_fitness
