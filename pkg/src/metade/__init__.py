"""Two-tier differential evolution.

A meta-level DE evolves 6-gene genomes (scale factor, crossover rate and
four categorical choices) that each decode into a fully parameterized DE;
the genome's fitness is the best value its DE reaches on the target
problem under a shared fixed seed.  192 classic and unnamed DE variants
live in the same search space, so the meta level tunes parameters and
picks the algorithm at the same time.
"""

from .backend import backend_name
from .landscape import (
    LandscapeSample,
    WalkSeries,
    default_epsilons,
    fdc,
    random_walk,
    rie,
    sample_landscape,
)
from .meta import (
    META_CR,
    META_F,
    MetaRunResult,
    MetaState,
    decode_params,
    derive_executor_seed,
    evaluate_batch,
    evolver_step,
    init_meta_state,
    metade_run,
)
from .model import (
    Bounds,
    BudgetError,
    ConfigurationError,
    ConvergenceRecord,
    EvaluationError,
    HyperConfig,
    MetadeError,
    Population,
    RunBudget,
    StrategyParseError,
    UndefinedMetricError,
)
from .pde import (
    MutationContext,
    PdeResult,
    build_mutation_context,
    clamp_to_bounds,
    crossover_arithmetic,
    crossover_binomial,
    crossover_exponential,
    exponential_block_length,
    init_population,
    mutate_batch,
    mutate_with_context,
    run_pde,
    select,
)
from .problems import (
    Problem,
    get_problem,
    list_problems,
    make_function,
    with_transform,
)
from .rng import RngStream, stream
from .runner import (
    RunConfig,
    RunSummary,
    fe_accounting,
    run_from_config,
    truncate_fitness,
)
from .strategies import decode_strategy_name, encode_strategy, enumerate_strategies

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "BudgetError",
    "ConfigurationError",
    "ConvergenceRecord",
    "EvaluationError",
    "HyperConfig",
    "LandscapeSample",
    "META_CR",
    "META_F",
    "MetaRunResult",
    "MetaState",
    "MetadeError",
    "MutationContext",
    "PdeResult",
    "Population",
    "Problem",
    "RngStream",
    "RunBudget",
    "RunConfig",
    "RunSummary",
    "StrategyParseError",
    "UndefinedMetricError",
    "WalkSeries",
    "backend_name",
    "build_mutation_context",
    "clamp_to_bounds",
    "crossover_arithmetic",
    "crossover_binomial",
    "crossover_exponential",
    "decode_params",
    "decode_strategy_name",
    "default_epsilons",
    "derive_executor_seed",
    "encode_strategy",
    "enumerate_strategies",
    "evaluate_batch",
    "evolver_step",
    "exponential_block_length",
    "fdc",
    "fe_accounting",
    "get_problem",
    "init_meta_state",
    "init_population",
    "list_problems",
    "make_function",
    "metade_run",
    "mutate_batch",
    "mutate_with_context",
    "random_walk",
    "rie",
    "run_from_config",
    "run_pde",
    "sample_landscape",
    "select",
    "stream",
    "truncate_fitness",
    "with_transform",
]
