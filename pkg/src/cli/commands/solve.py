"""``xlbench solve``: seeded baseline runs, one .sol per run plus runs.csv."""

import argparse
from pathlib import Path

from pydantic import ValidationError

from src.cli.common import (
    build_settings,
    ensure_out_dir,
    load_instance,
    non_negative_int,
    positive_float,
    positive_int,
    u64,
)
from src.core.exceptions import EXIT_OK, UsageError
from src.core.logging import get_logger
from src.formats.solution_file import write_solution
from src.formats.tables import write_runs
from src.models.generation import U64_MAX
from src.models.solver import MoveKind, SolverConfig
from src.solver.runner import run_many

logger = get_logger(__name__)

RUNS_FILE = "runs.csv"


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser(
        "solve",
        help="run the baseline solver with several seeds",
        description=(
            "Run i uses seed SEED + i. With --iterations the wall clock is "
            "ignored and outputs are reproducible; otherwise --time bounds each run."
        ),
    )
    parser.add_argument("instance", type=Path, help="instance file (.vrp)")
    parser.add_argument("--time", type=positive_float, help="seconds per run")
    parser.add_argument("--seed", type=u64, default=0, help="seed of the first run")
    parser.add_argument("--runs", type=positive_int, default=1, help="number of runs")
    parser.add_argument(
        "--iterations", type=non_negative_int, help="restart budget per run"
    )
    parser.add_argument("--workers", type=positive_int, default=1, help="processes")
    parser.add_argument("--neighbors", type=positive_int, help="granular neighbourhood k")
    parser.add_argument(
        "--moves",
        nargs="+",
        choices=[kind.value for kind in MoveKind],
        help="enabled neighbourhoods (default: all)",
    )
    parser.add_argument("--method", default="baseline", help="method label in runs.csv")
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.set_defaults(handler=run)


def _configs(args: argparse.Namespace) -> list[SolverConfig]:
    settings = build_settings(
        solver_time_limit=args.time, neighbor_k=args.neighbors
    )
    moves = frozenset(MoveKind(value) for value in args.moves) if args.moves else None
    try:
        return [
            SolverConfig(
                time_limit=settings.solver_time_limit,
                rng_seed=(args.seed + run) & U64_MAX,
                neighbor_k=settings.neighbor_k,
                iteration_limit=args.iterations,
                perturbation_moves=settings.perturbation_moves,
                **({"moves": moves} if moves else {}),
            )
            for run in range(args.runs)
        ]
    except ValidationError as exc:
        raise UsageError(f"invalid solver configuration: {exc.errors()[0]['msg']}") from None


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    configs = _configs(args)
    out_dir = ensure_out_dir(args.out)

    results = run_many(instance, configs, workers=args.workers)
    rows = []
    for result in results:
        path = out_dir / f"{instance.name}.seed{result.seed}.sol"
        path.write_bytes(write_solution(instance, result.solution))
        rows.append(
            {
                "instance": instance.name,
                "method": args.method,
                "seed": result.seed,
                "cost": result.cost,
                "initial_cost": result.initial_cost,
                "routes": len(result.solution.routes),
                "iterations": result.iterations,
                "elapsed": round(result.elapsed, 3),
            }
        )
        print(f"seed={result.seed} cost={result.cost} routes={len(result.solution.routes)}")
    write_runs(rows, out_dir / RUNS_FILE)

    best = min(result.cost for result in results)
    logger.info("solve_finished", instance=instance.name, runs=len(results), best=best)
    return EXIT_OK
