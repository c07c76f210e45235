"""Command-line interface.

Subcommands:

* ``metade run`` — one benchmark run (two-tier or plain executor).
* ``metade landscape`` — FDC and ruggedness diagnostics for a problem.
* ``metade strategies`` — list/encode/decode strategy names.

Exit codes: 0 success, 2 bad usage or configuration, 3 budget too small.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .landscape import SAMPLE_ROLE, WALK_ROLE, fdc, random_walk, rie, sample_landscape
from .model import BudgetError, ConfigurationError, MetadeError
from .problems import get_problem, list_problems
from .rng import stream
from .runner import RunConfig, run_from_config
from .strategies import decode_strategy_name, encode_strategy, enumerate_strategies


def _add_run_parser(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("run", help="run the two-tier optimizer or a fixed-strategy DE")
    p.add_argument("--config", help="JSON file of run options; flags given here override it")
    p.add_argument("--problem", help=f"problem name, e.g. {', '.join(list_problems())}; "
                                     "append @rot for the shifted+rotated variant")
    p.add_argument("--dim", type=int, help="problem dimension")
    p.add_argument("--mode", choices=("metade", "pde"), help="two-tier search or fixed strategy")
    p.add_argument("--meta-np", type=int, help="meta population size")
    p.add_argument("--meta-gens", type=int, help="meta generation cap")
    p.add_argument("--exec-np", type=int, help="executor population size")
    p.add_argument("--exec-gens", type=int, help="executor generations per evaluation")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--strategy", help="fixed strategy name for --mode pde, e.g. DE/rand/1/bin")
    p.add_argument("--f", type=float, help="scale factor for --mode pde")
    p.add_argument("--cr", type=float, help="crossover rate for --mode pde")
    p.add_argument("--budget-fes", type=float, help="max fitness evaluations")
    p.add_argument("--budget-wall-ms", type=float, help="max wall-clock milliseconds")
    p.add_argument("--workers", type=int, help="parallel executor processes")
    p.add_argument("--out", help="output file for the convergence log")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), help="output format")
    p.add_argument("--problem-seed", type=int, help="seed of the shift/rotation transform")


def _add_landscape_parser(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("landscape", help="fitness-distance correlation and ruggedness")
    p.add_argument("--problem", required=True)
    p.add_argument("--dim", type=int, default=10)
    p.add_argument("--samples", type=int, default=10_000, help="uniform sample size for FDC")
    p.add_argument("--walk-steps", type=int, default=1_000)
    p.add_argument("--step-frac", type=float, default=0.01,
                   help="walk step length as a fraction of the box diagonal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--problem-seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def _add_strategies_parser(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("strategies", help="inspect the strategy space")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="print all 192 strategies (default)")
    g.add_argument("--encode", metavar="NAME", help="print the code tuple of a strategy name")
    g.add_argument("--decode", nargs=4, type=int, metavar=("BL", "BR", "DN", "CS"),
                   help="print the canonical name of a code tuple")


def _cmd_run(args: argparse.Namespace) -> int:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    config = RunConfig.from_dict(data)
    for f in dataclasses.fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            setattr(config, f.name, value)
    if config.budget_fes is not None:
        config.budget_fes = int(config.budget_fes)
    summary = run_from_config(config)
    print(
        f"problem={summary.problem} dim={summary.dim} mode={summary.mode} seed={summary.seed} "
        f"best={summary.best_fitness:.6g} raw={summary.best_fitness_raw:.6g} "
        f"strategy={summary.strategy} F={summary.config.F:.4f} CR={summary.config.CR:.4f} "
        f"fes={summary.total_fes} generations={summary.generations} "
        f"wall_ms={summary.wall_ms:.1f}"
    )
    return 0


def _cmd_landscape(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem, args.dim, args.problem_seed)
    sample = sample_landscape(problem, args.samples, stream(args.seed, SAMPLE_ROLE))
    walk = random_walk(problem, args.walk_steps, args.step_frac, stream(args.seed, WALK_ROLE))
    report = {
        "problem": args.problem,
        "dim": args.dim,
        "seed": args.seed,
        "samples": args.samples,
        "fdc": fdc(sample),
        "walk_steps": args.walk_steps,
        "step_fraction": args.step_frac,
        "rie": rie(walk),
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_strategies(args: argparse.Namespace) -> int:
    if args.encode:
        bl, br, dn, cs = encode_strategy(args.encode)
        print(f"{bl} {br} {dn} {cs}")
        return 0
    if args.decode:
        bl, br, dn, cs = args.decode
        print(decode_strategy_name(bl, br, dn, cs))
        return 0
    for (bl, br, dn, cs), name in enumerate_strategies():
        print(f"{bl} {br} {dn} {cs}  {name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metade", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(sub)
    _add_landscape_parser(sub)
    _add_strategies_parser(sub)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "landscape":
            return _cmd_landscape(args)
        return _cmd_strategies(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigurationError, MetadeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
