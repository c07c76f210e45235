"""Full executor runs: oracle bit-identity, determinism, accounting."""

import numpy as np
import pytest

from _reference import sphere_scalar, vanilla_de_run
from metade.model import ConfigurationError, HyperConfig
from metade.pde import run_pde
from metade.problems import get_problem
from metade.strategies import enumerate_strategies


def _records_collector():
    records = []

    def cb(rec):
        records.append(rec)

    return records, cb


@pytest.mark.parametrize("seed", [0, 7, 91])
def test_bit_identical_to_straight_line_reference(seed):
    NP, D, G = 20, 10, 30
    problem = get_problem("sphere", D)
    cfg = HyperConfig.from_strategy("DE/rand/1/bin", F=0.5, CR=0.9)
    records, cb = _records_collector()
    res = run_pde(problem, cfg, NP, G, seed, on_generation=cb)
    _, ref_fit, ref_curve = vanilla_de_run(
        sphere_scalar, -100.0, 100.0, D, NP, G, 0.5, 0.9, seed
    )
    assert [r.best_fitness for r in records] == ref_curve
    assert res.best_fitness == min(ref_fit)


def test_run_is_deterministic():
    problem = get_problem("rastrigin", 6)
    cfg = HyperConfig.from_strategy("DE/current-to-pbest/1/bin", F=0.7, CR=0.4)
    a = run_pde(problem, cfg, 25, 40, seed=5)
    b = run_pde(problem, cfg, 25, 40, seed=5)
    assert a.best_fitness == b.best_fitness
    assert np.array_equal(a.best_x, b.best_x)
    assert a.fe_count == b.fe_count


def test_fe_count_is_pop_times_generations_plus_init():
    problem = get_problem("sphere", 4)
    cfg = HyperConfig.from_strategy("DE/rand/1/bin", F=0.5, CR=0.9)
    res = run_pde(problem, cfg, 12, 17, seed=1)
    assert res.fe_count == 12 * (17 + 1)
    assert res.generations == 17


def test_callback_can_stop_early():
    problem = get_problem("sphere", 4)
    cfg = HyperConfig.from_strategy("DE/rand/1/bin", F=0.5, CR=0.9)
    res = run_pde(problem, cfg, 12, 100, seed=1, on_generation=lambda r: r.generation >= 5)
    assert res.generations == 5
    assert res.fe_count == 12 * (5 + 1)


def test_convergence_log_never_increases():
    for seed in range(4):
        for name in ("DE/rand/1/bin", "DE/best/2/exp", "DE/current-to-pbest/1/arith"):
            problem = get_problem("ackley", 5)
            cfg = HyperConfig.from_strategy(name, F=0.6, CR=0.8)
            records, cb = _records_collector()
            run_pde(problem, cfg, 16, 60, seed, on_generation=cb)
            best = [r.best_fitness for r in records]
            assert all(b <= a for a, b in zip(best, best[1:])), name
            fes = [r.cumulative_fes for r in records]
            assert fes == [16 * (g + 1) for g in range(1, len(fes) + 1)]


def test_every_strategy_runs_and_stays_in_bounds():
    problem = get_problem("griewank", 3)
    for (bl, br, dn, cs), name in enumerate_strategies():
        cfg = HyperConfig(F=0.5, CR=0.6, bl=bl, br=br, dn=dn, cs=cs)
        res = run_pde(problem, cfg, 12, 3, seed=2)
        assert np.isfinite(res.best_fitness), name
        assert problem.bounds.contains(res.best_x), name


def test_validation_errors():
    problem = get_problem("sphere", 4)
    cfg = HyperConfig.from_strategy("DE/rand/4/bin", F=0.5, CR=0.9)
    with pytest.raises(ConfigurationError):
        run_pde(problem, cfg, 10, 5, seed=0)  # dn=4 needs 11
    cfg1 = HyperConfig.from_strategy("DE/rand/1/bin", F=0.5, CR=0.9)
    with pytest.raises(ConfigurationError):
        run_pde(problem, cfg1, 10, 0, seed=0)
