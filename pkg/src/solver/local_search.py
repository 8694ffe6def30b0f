"""First-improvement granular local search and random perturbation."""

import time
from collections.abc import Sequence

from src.core.exceptions import InfeasibleSolutionError
from src.core.logging import get_logger
from src.models.routing import Instance, Solution
from src.models.solver import SolverConfig
from src.services.evaluation import validate
from src.services.random_streams import RandomStream
from src.solver.moves import MoveOperator, Relocate, operators_for
from src.solver.neighbors import nearest_neighbors
from src.solver.state import RoutingState

logger = get_logger(__name__)

# Chance that a perturbation relocation opens a fresh single-customer route
_NEW_ROUTE_PROBABILITY = 0.1


def descend(
    state: RoutingState,
    neighbors: Sequence[Sequence[int]],
    operators: Sequence[MoveOperator],
    rng: RandomStream,
    deadline: float | None = None,
) -> int:
    """Apply improving moves until none is left or the deadline passes.

    Customers are scanned in a shuffled order; for each customer the first
    improving (neighbour, operator, variant) found is applied.

    Returns:
        Number of moves applied.
    """
    customers = list(range(1, state.instance.n_total))
    applied = 0
    improved = True
    while improved:
        improved = False
        rng.shuffle(customers)
        for u in customers:
            if deadline is not None and time.perf_counter() >= deadline:
                return applied
            if _improve_customer(state, u, neighbors[u], operators):
                applied += 1
                improved = True
    return applied


def _improve_customer(
    state: RoutingState,
    u: int,
    candidates: Sequence[int],
    operators: Sequence[MoveOperator],
) -> bool:
    for v in candidates:
        for operator in operators:
            for variant in operator.variants:
                change = operator.delta(state, u, v, variant)
                if change is not None and change < 0:
                    operator.apply(state, u, v, variant)
                    return True
    return False


def perturb(
    state: RoutingState,
    neighbors: Sequence[Sequence[int]],
    moves: int,
    rng: RandomStream,
) -> int:
    """Apply random capacity-feasible relocations regardless of their cost.

    Returns:
        Number of relocations performed.
    """
    relocate = Relocate()
    n = state.instance.n_customers
    done = 0
    for _ in range(10 * moves):
        if done >= moves:
            break
        u = rng.randint(1, n)
        if rng.bernoulli(_NEW_ROUTE_PROBABILITY) and len(state.routes[state.route_of[u]]) > 1:
            _move_to_new_route(state, u)
            done += 1
            continue
        if not neighbors[u]:
            continue
        v = rng.choice(neighbors[u])
        variant = rng.choice(relocate.variants)
        if relocate.delta(state, u, v, variant) is not None:
            relocate.apply(state, u, v, variant)
            done += 1
    return done


def _move_to_new_route(state: RoutingState, u: int) -> None:
    pu, nu = state.prev(u), state.next(u)
    change = 2 * state.d(0, u) - (state.d(pu, u) + state.d(u, nu) - state.d(pu, nu))
    source = state.route_of[u]
    state.routes[source].pop(state.pos[u])
    state.refresh(source)
    state.add_route([u])
    state.cost += change


def local_search(
    instance: Instance,
    solution: Solution,
    config: SolverConfig,
    neighbors: Sequence[Sequence[int]] | None = None,
) -> Solution:
    """Improve a feasible solution with granular first-improvement descent.

    Args:
        instance: Instance the solution belongs to.
        solution: Feasible starting solution.
        config: Moves, neighbourhood size, seed and time limit.
        neighbors: Precomputed neighbour lists.

    Returns:
        A feasible solution whose cost is at most the input cost.

    Raises:
        InfeasibleSolutionError: If the input solution is not feasible.
    """
    report = validate(instance, solution)
    if not report.feasible:
        raise InfeasibleSolutionError(
            f"local search needs a feasible start, got {len(report.violations)} violation(s)",
            details={"violations": [finding.message for finding in report.violations]},
        )
    if neighbors is None:
        neighbors = nearest_neighbors(instance, config.neighbor_k)
    deadline = (
        None if config.iteration_limit is not None else time.perf_counter() + config.time_limit
    )
    state = RoutingState.from_solution(instance, solution)
    rng = RandomStream(config.rng_seed)
    applied = descend(state, neighbors, operators_for(config.moves), rng, deadline)
    logger.debug(
        "local_search_pass",
        instance=instance.name,
        moves_applied=applied,
        start_cost=report.recomputed_cost,
        cost=state.cost,
    )
    return state.to_solution()
