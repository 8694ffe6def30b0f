"""Mutable routing state with O(1) position, load and prefix-load lookups."""

from src.models.routing import Instance, Solution
from src.services.evaluation import rounded_distance

DEPOT = 0


class RoutingState:
    """Routes as index lists plus per-node route, position and prefix load.

    Routes emptied by a move stay as empty lists so that route ids remain
    stable; they are dropped when the state is exported.
    """

    def __init__(self, instance: Instance, routes: list[list[int]]) -> None:
        self.instance = instance
        self.capacity = instance.capacity
        self.demand = instance.node_demands
        self._xs = instance.xs
        self._ys = instance.ys
        size = instance.n_total
        self.routes: list[list[int]] = [list(route) for route in routes]
        self.route_of = [-1] * size
        self.pos = [-1] * size
        self.prefix = [0] * size
        self.loads = [0] * len(self.routes)
        for route_id in range(len(self.routes)):
            self.refresh(route_id)
        self.cost = self.recompute_cost()

    @classmethod
    def from_solution(cls, instance: Instance, solution: Solution) -> "RoutingState":
        """Build a state from an immutable solution."""
        return cls(instance, solution.as_lists())

    def copy(self) -> "RoutingState":
        """Independent copy sharing only the immutable instance."""
        clone = RoutingState.__new__(RoutingState)
        clone.instance = self.instance
        clone.capacity = self.capacity
        clone.demand = self.demand
        clone._xs = self._xs
        clone._ys = self._ys
        clone.routes = [list(route) for route in self.routes]
        clone.route_of = list(self.route_of)
        clone.pos = list(self.pos)
        clone.prefix = list(self.prefix)
        clone.loads = list(self.loads)
        clone.cost = self.cost
        return clone

    def d(self, a: int, b: int) -> int:
        """Rounded Euclidean distance between two nodes."""
        xs, ys = self._xs, self._ys
        return rounded_distance(xs[a], ys[a], xs[b], ys[b])

    def refresh(self, route_id: int) -> None:
        """Recompute positions, prefix loads and load of one route."""
        running = 0
        route_of, pos, prefix, demand = self.route_of, self.pos, self.prefix, self.demand
        for index, node in enumerate(self.routes[route_id]):
            running += demand[node]
            route_of[node] = route_id
            pos[node] = index
            prefix[node] = running
        self.loads[route_id] = running

    def add_route(self, customers: list[int]) -> int:
        """Append a new route and return its id."""
        self.routes.append(list(customers))
        self.loads.append(0)
        route_id = len(self.routes) - 1
        self.refresh(route_id)
        return route_id

    def prev(self, node: int) -> int:
        """Predecessor on the route (the depot before the first customer)."""
        index = self.pos[node]
        return self.routes[self.route_of[node]][index - 1] if index > 0 else DEPOT

    def next(self, node: int) -> int:
        """Successor on the route (the depot after the last customer)."""
        route = self.routes[self.route_of[node]]
        index = self.pos[node] + 1
        return route[index] if index < len(route) else DEPOT

    def route_cost(self, route_id: int) -> int:
        """Cost of one route including depot legs; zero when empty."""
        route = self.routes[route_id]
        if not route:
            return 0
        total = self.d(DEPOT, route[0]) + self.d(route[-1], DEPOT)
        for a, b in zip(route, route[1:], strict=False):
            total += self.d(a, b)
        return total

    def recompute_cost(self) -> int:
        """Full cost recomputation from scratch."""
        return sum(self.route_cost(route_id) for route_id in range(len(self.routes)))

    def is_capacity_feasible(self) -> bool:
        """Whether every route respects the vehicle capacity."""
        return all(load <= self.capacity for load in self.loads)

    def to_solution(self) -> Solution:
        """Export the non-empty routes as a Solution."""
        return Solution.from_lists([route for route in self.routes if route])
