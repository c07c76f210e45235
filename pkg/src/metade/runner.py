"""Benchmark run orchestration: config -> run -> convergence logs.

Reported best fitness is truncated to 0 below 1e-8 (values that small
mean "solved" on these benchmarks); raw values are preserved in the JSON
document and the returned summary.  CSV logs are written incrementally
and flushed per row, so a killed run keeps everything logged so far.
Identical config and seed give byte-identical CSV output except for the
elapsed_ms column.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from .meta import metade_run
from .model import (
    BudgetError,
    ConfigurationError,
    ConvergenceRecord,
    HyperConfig,
    RunBudget,
)
from .pde import run_pde
from .problems import get_problem

TRUNCATION_THRESHOLD = 1e-8

CSV_HEADER = "generation,best_fitness,cumulative_fes,elapsed_ms"


def truncate_fitness(value: float) -> float:
    """Reported fitness: values below the solved threshold collapse to 0."""
    return 0.0 if value < TRUNCATION_THRESHOLD else float(value)


def fe_accounting(batch_sizes: Iterable[int]) -> np.ndarray:
    """Cumulative evaluation counts for a sequence of evaluation batches."""
    return np.cumsum(np.fromiter(batch_sizes, dtype=np.int64))


@dataclass
class RunConfig:
    """Everything needed to reproduce one benchmark run."""

    problem: str = "sphere"
    dim: int = 10
    mode: str = "metade"
    meta_np: int = 20
    meta_gens: int = 10
    exec_np: int = 50
    exec_gens: int = 300
    seed: int = 0
    strategy: str = "DE/rand/1/bin"
    f: float = 0.5
    cr: float = 0.9
    budget_fes: int | None = None
    budget_wall_ms: float | None = None
    workers: int = 1
    out: str | None = None
    fmt: str = "csv"
    problem_seed: int = 0

    def validate(self) -> None:
        if self.mode not in ("metade", "pde"):
            raise ConfigurationError(f"mode must be 'metade' or 'pde', got {self.mode!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigurationError(f"fmt must be 'csv' or 'json', got {self.fmt!r}")
        if self.dim < 2:
            raise ConfigurationError(f"dim must be >= 2, got {self.dim}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if self.budget_fes is not None and self.budget_fes < 1:
            raise ConfigurationError(f"budget_fes must be positive, got {self.budget_fes}")
        if self.budget_wall_ms is not None and self.budget_wall_ms <= 0:
            raise ConfigurationError(f"budget_wall_ms must be positive, got {self.budget_wall_ms}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class RunSummary:
    problem: str
    dim: int
    mode: str
    seed: int
    strategy: str
    config: HyperConfig
    best_fitness: float
    best_fitness_raw: float
    total_fes: int
    generations: int
    wall_ms: float
    records: list[ConvergenceRecord] = field(repr=False)


class CsvLog:
    """Streaming convergence log; one flushed row per generation."""

    def __init__(self, fh: IO[str]):
        self._fh = fh
        self._fh.write(CSV_HEADER + "\n")
        self._fh.flush()

    def write(self, rec: ConvergenceRecord) -> None:
        self._fh.write(
            f"{rec.generation},{truncate_fitness(rec.best_fitness)!r},"
            f"{rec.cumulative_fes},{rec.elapsed_ms!r}\n"
        )
        self._fh.flush()


def _summary_dict(s: RunSummary) -> dict:
    return {
        "problem": s.problem,
        "dim": s.dim,
        "mode": s.mode,
        "seed": s.seed,
        "strategy": s.strategy,
        "hyperconfig": {
            "F": s.config.F,
            "CR": s.config.CR,
            "bl": s.config.bl,
            "br": s.config.br,
            "dn": s.config.dn,
            "cs": s.config.cs,
        },
        "best_fitness": s.best_fitness,
        "best_fitness_raw": s.best_fitness_raw,
        "total_fes": s.total_fes,
        "generations": s.generations,
        "wall_ms": s.wall_ms,
    }


def write_json(cfg: RunConfig, summary: RunSummary, fh: IO[str]) -> None:
    doc = {
        "config": dataclasses.asdict(cfg),
        "summary": _summary_dict(summary),
        "records": [
            {
                "generation": r.generation,
                "best_fitness": truncate_fitness(r.best_fitness),
                "best_fitness_raw": r.best_fitness,
                "cumulative_fes": r.cumulative_fes,
                "elapsed_ms": r.elapsed_ms,
            }
            for r in summary.records
        ],
    }
    json.dump(doc, fh, indent=2, sort_keys=True)
    fh.write("\n")


def run_from_config(config: RunConfig) -> RunSummary:
    """Execute one configured run, streaming logs if requested."""
    config.validate()
    problem = get_problem(config.problem, config.dim, config.problem_seed)

    t0 = time.perf_counter()
    records: list[ConvergenceRecord] = []
    out_fh: IO[str] | None = None
    csv_log: CsvLog | None = None
    if config.out and config.fmt == "csv":
        out_fh = open(config.out, "w")
        csv_log = CsvLog(out_fh)

    try:
        if config.mode == "pde":
            hyper = HyperConfig.from_strategy(config.strategy, config.f, config.cr)
            generations = config.exec_gens
            if config.budget_fes is not None:
                affordable = config.budget_fes // config.exec_np - 1
                if affordable < 1:
                    raise BudgetError(
                        f"budget_fes={config.budget_fes} cannot cover initialization plus "
                        f"one generation at pop_size={config.exec_np}; increase the budget"
                    )
                generations = min(generations, int(affordable))
            deadline = config.budget_wall_ms

            def on_gen(rec: ConvergenceRecord):
                records.append(rec)
                if csv_log is not None:
                    csv_log.write(rec)
                return deadline is not None and rec.elapsed_ms >= deadline

            result = run_pde(
                problem, hyper, config.exec_np, generations, config.seed, on_generation=on_gen
            )
            best_raw = result.best_fitness
            total_fes = result.fe_count
            done = result.generations
        else:
            budget = RunBudget(
                max_generations=config.meta_gens,
                max_fes=config.budget_fes,
                max_wall_ms=config.budget_wall_ms,
            )

            def on_meta_gen(rec: ConvergenceRecord):
                records.append(rec)
                if csv_log is not None:
                    csv_log.write(rec)

            result = metade_run(
                problem,
                config.meta_np,
                config.meta_gens,
                config.exec_np,
                config.exec_gens,
                config.seed,
                budget=budget,
                workers=config.workers,
                on_generation=on_meta_gen,
            )
            hyper = result.best_config
            best_raw = result.best_fitness
            total_fes = result.total_fes
            done = len(result.records)
    finally:
        if out_fh is not None:
            out_fh.close()

    summary = RunSummary(
        problem=config.problem,
        dim=config.dim,
        mode=config.mode,
        seed=config.seed,
        strategy=hyper.strategy_name,
        config=hyper,
        best_fitness=truncate_fitness(best_raw),
        best_fitness_raw=float(best_raw),
        total_fes=total_fes,
        generations=done,
        wall_ms=(time.perf_counter() - t0) * 1e3,
        records=records,
    )
    if config.out and config.fmt == "json":
        with open(config.out, "w") as fh:
            write_json(config, summary, fh)
    return summary
