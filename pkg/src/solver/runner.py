"""Baseline solver runs: savings construction then iterated local search."""

import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

from src.core.exceptions import InfeasibleSolutionError
from src.core.logging import get_logger
from src.models.routing import Instance
from src.models.solver import RunResult, SolverConfig, TracePoint
from src.services.evaluation import validate
from src.services.random_streams import RandomStream
from src.solver.local_search import descend, perturb
from src.solver.moves import operators_for
from src.solver.neighbors import nearest_neighbors
from src.solver.savings import savings_construct
from src.solver.state import RoutingState

logger = get_logger(__name__)


def solve(instance: Instance, config: SolverConfig) -> RunResult:
    """Construct, descend, then restart from perturbed copies of the incumbent.

    In iteration-budget mode (``config.iteration_limit`` set) the wall
    clock is ignored and the run is fully determined by the seed.

    Args:
        instance: Instance to solve.
        config: Budget, seed and neighbourhood settings.

    Returns:
        RunResult with the best solution, its cost and the incumbent trace.

    Raises:
        InfeasibleSolutionError: If the final incumbent fails validation.
    """
    started = time.perf_counter()
    deterministic = config.iteration_limit is not None
    deadline = None if deterministic else started + config.time_limit

    def elapsed() -> float:
        return time.perf_counter() - started

    def budget_left(iteration: int) -> bool:
        if deterministic:
            return iteration < (config.iteration_limit or 0)
        return time.perf_counter() < (deadline or 0.0)

    rng = RandomStream(config.rng_seed)
    neighbors = nearest_neighbors(instance, config.neighbor_k)
    operators = operators_for(config.moves)

    initial = savings_construct(instance, config, neighbors)
    best = RoutingState.from_solution(instance, initial)
    initial_cost = best.cost
    descend(best, neighbors, operators, rng, deadline)
    trace = [TracePoint(elapsed=elapsed(), iteration=0, cost=best.cost)]

    iteration = 0
    while budget_left(iteration):
        iteration += 1
        candidate = best.copy()
        perturb(candidate, neighbors, config.perturbation_moves, rng)
        order = list(operators)
        rng.shuffle(order)
        descend(candidate, neighbors, order, rng, deadline)
        if candidate.cost < best.cost and candidate.is_capacity_feasible():
            best = candidate
            trace.append(TracePoint(elapsed=elapsed(), iteration=iteration, cost=best.cost))

    solution = best.to_solution()
    report = validate(instance, solution)
    if not report.feasible or report.recomputed_cost != best.cost:
        raise InfeasibleSolutionError(
            "solver incumbent failed validation",
            details={"instance": instance.name, "seed": config.rng_seed},
        )

    result = RunResult(
        instance=instance.name,
        seed=config.rng_seed,
        solution=solution,
        cost=best.cost,
        initial_cost=initial_cost,
        elapsed=elapsed(),
        iterations=iteration,
        trace=tuple(trace),
    )
    logger.info(
        "solver_run_finished",
        instance=instance.name,
        seed=config.rng_seed,
        initial_cost=initial_cost,
        cost=result.cost,
        routes=len(solution.routes),
        iterations=iteration,
        elapsed_seconds=round(result.elapsed, 3),
    )
    return result


def _solve_job(job: tuple[Instance, SolverConfig]) -> RunResult:
    return solve(*job)


def run_many(
    instance: Instance, configs: Sequence[SolverConfig], workers: int = 1
) -> list[RunResult]:
    """Run several seeded solves, in a process pool when ``workers > 1``.

    Results are returned in the order of ``configs``.
    """
    jobs = [(instance, config) for config in configs]
    if workers <= 1 or len(jobs) <= 1:
        return [_solve_job(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(_solve_job, jobs))
