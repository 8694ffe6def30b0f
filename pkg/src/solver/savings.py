"""Clarke-Wright parallel savings over granular neighbour pairs."""

from src.core.logging import get_logger
from src.models.routing import Instance, Solution
from src.models.solver import SolverConfig
from src.services.evaluation import rounded_distance
from src.solver.neighbors import nearest_neighbors

logger = get_logger(__name__)


def savings_list(instance: Instance, neighbors: list[list[int]]) -> list[tuple[int, int, int]]:
    """Positive savings ``(s, i, j)`` over neighbour pairs, best first.

    s(i, j) = d(0, i) + d(0, j) - d(i, j); ties are ordered by (i, j).
    """
    xs, ys = instance.xs, instance.ys
    depot_leg = [rounded_distance(xs[0], ys[0], xs[i], ys[i]) for i in range(len(xs))]
    pairs: set[tuple[int, int]] = set()
    for i, row in enumerate(neighbors):
        for j in row:
            pairs.add((i, j) if i < j else (j, i))

    savings = []
    for i, j in pairs:
        saving = depot_leg[i] + depot_leg[j] - rounded_distance(xs[i], ys[i], xs[j], ys[j])
        if saving > 0:
            savings.append((saving, i, j))
    savings.sort(key=lambda item: (-item[0], item[1], item[2]))
    return savings


def savings_construct(
    instance: Instance,
    config: SolverConfig | None = None,
    neighbors: list[list[int]] | None = None,
) -> Solution:
    """Build a feasible solution by merging route ends in savings order.

    Args:
        instance: Instance to solve.
        config: Solver settings; only ``neighbor_k`` is used here.
        neighbors: Precomputed neighbour lists.

    Returns:
        A capacity-feasible Solution covering every customer once.
    """
    if neighbors is None:
        neighbors = nearest_neighbors(instance, (config or SolverConfig()).neighbor_k)
    demand = instance.node_demands
    routes: dict[int, list[int]] = {c: [c] for c in range(1, instance.n_total)}
    owner = list(range(instance.n_total))
    loads = {c: demand[c] for c in routes}

    merges = 0
    for _, i, j in savings_list(instance, neighbors):
        ri, rj = owner[i], owner[j]
        if ri == rj or loads[ri] + loads[rj] > instance.capacity:
            continue
        left, right = routes[ri], routes[rj]
        if i not in (left[0], left[-1]) or j not in (right[0], right[-1]):
            continue
        if left[-1] != i:
            left.reverse()
        if right[0] != j:
            right.reverse()
        left.extend(right)
        for node in right:
            owner[node] = ri
        loads[ri] += loads.pop(rj)
        del routes[rj]
        merges += 1

    logger.debug(
        "savings_constructed", instance=instance.name, routes=len(routes), merges=merges
    )
    return Solution.from_lists([routes[key] for key in sorted(routes)])
