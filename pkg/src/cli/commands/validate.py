"""``xlbench validate``: feasibility report for an instance/solution pair."""

import argparse
from pathlib import Path

from src.cli.common import load_instance, read_input
from src.core.exceptions import EXIT_DOMAIN_FAILURE, EXIT_OK
from src.core.logging import get_logger
from src.formats.solution_file import parse_solution
from src.services.evaluation import validate

logger = get_logger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser(
        "validate",
        help="check a solution against an instance",
        description="Exit 0 iff the solution is feasible; prints the recomputed cost.",
    )
    parser.add_argument("instance", type=Path, help="instance file (.vrp)")
    parser.add_argument("solution", type=Path, help="solution file (.sol)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    solution = parse_solution(read_input(args.solution))
    report = validate(instance, solution)

    cost = "-" if report.recomputed_cost is None else str(report.recomputed_cost)
    verdict = "FEASIBLE" if report.feasible else "INFEASIBLE"
    print(f"{verdict} cost={cost} routes={report.n_routes}")
    for finding in report.violations:
        print(f"  {finding.kind.value}: {finding.message}")
    for finding in report.warnings:
        print(f"  warning {finding.kind.value}: {finding.message}")

    logger.info(
        "validation_reported",
        instance=instance.name,
        feasible=report.feasible,
        cost=report.recomputed_cost,
        violations=len(report.violations),
    )
    return EXIT_OK if report.feasible else EXIT_DOMAIN_FAILURE
