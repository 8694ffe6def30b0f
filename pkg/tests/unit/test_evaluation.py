"""Unit tests for rounded costs and the solution validator."""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.core.exceptions import UnknownCustomerError
from src.models.routing import FindingKind, Instance, Point, Route, Solution
from src.services.evaluation import (
    euclid_cost,
    nint_sqrt,
    rounded_distance,
    route_cost,
    solution_cost,
    validate,
)

coordinates = st.integers(min_value=0, max_value=1000)


@st.composite
def feasible_pairs(draw: st.DrawFn) -> tuple[Instance, list[list[int]]]:
    """A random instance with more demand than one vehicle holds, and a
    capacity-feasible route split of it."""
    points = draw(
        st.lists(
            st.tuples(coordinates, coordinates), min_size=4, max_size=9, unique=True
        )
    )
    capacity = 10
    demands = draw(
        st.lists(
            st.integers(min_value=1, max_value=capacity),
            min_size=len(points) - 1,
            max_size=len(points) - 1,
        )
    )
    assume(sum(demands) > capacity)
    k_min = math.ceil(sum(demands) / capacity)
    instance = Instance(
        name=f"T-n{len(points)}-k{k_min}",
        depot=Point(x=points[0][0], y=points[0][1]),
        customers=tuple(Point(x=x, y=y) for x, y in points[1:]),
        demands=tuple(demands),
        capacity=capacity,
        k_min=k_min,
    )
    routes: list[list[int]] = []
    load = capacity
    for customer in draw(st.permutations(list(range(1, len(points))))):
        demand = instance.node_demands[customer]
        if load + demand > capacity:
            routes.append([])
            load = 0
        routes[-1].append(customer)
        load += demand
    return instance, routes


class TestRoundedDistance:
    """Tests for EUC_2D rounding."""

    def test_axis_aligned(self) -> None:
        """Test an exact integer distance."""
        assert euclid_cost(Point(x=0, y=0), Point(x=3, y=4)) == 5

    def test_rounds_down_below_half(self) -> None:
        """Test that sqrt(2) rounds to 1."""
        assert rounded_distance(0, 0, 1, 1) == 1

    def test_rounds_up_above_half(self) -> None:
        """Test that sqrt(8) = 2.83 rounds to 3."""
        assert rounded_distance(0, 0, 2, 2) == 3

    def test_grid_diagonal(self) -> None:
        """Test the full grid diagonal 1414.21 -> 1414."""
        assert rounded_distance(0, 0, 1000, 1000) == 1414

    @given(st.integers(min_value=0, max_value=2_000_000))
    def test_nint_matches_float(self, value: int) -> None:
        """Test the integer rounding against floor(sqrt + 0.5)."""
        assert nint_sqrt(value) == math.floor(math.sqrt(value) + 0.5)

    @given(coordinates, coordinates, coordinates, coordinates)
    def test_symmetric(self, ax: int, ay: int, bx: int, by: int) -> None:
        """Test that distances are symmetric."""
        assert rounded_distance(ax, ay, bx, by) == rounded_distance(bx, by, ax, ay)

    @given(coordinates, coordinates, coordinates, coordinates, coordinates, coordinates)
    def test_triangle_within_rounding_slack(
        self, ax: int, ay: int, bx: int, by: int, cx: int, cy: int
    ) -> None:
        """Test the triangle inequality up to one unit of rounding."""
        direct = rounded_distance(ax, ay, cx, cy)
        detour = rounded_distance(ax, ay, bx, by) + rounded_distance(bx, by, cx, cy)

        assert direct <= detour + 1


class TestCosts:
    """Tests for route and solution costs."""

    def test_route_cost_includes_depot_legs(self, small_instance: Instance) -> None:
        """Test that a route is priced from and back to the depot."""
        assert route_cost(small_instance, [1, 2]) == 12

    def test_route_orientation_irrelevant(self, small_instance: Instance) -> None:
        """Test that reversing a route keeps its cost."""
        assert route_cost(small_instance, [3, 4, 5]) == route_cost(small_instance, [5, 4, 3])

    def test_solution_cost(self, small_instance: Instance, small_solution: Solution) -> None:
        """Test the total cost of the fixture solution."""
        assert solution_cost(small_instance, small_solution) == 32

    def test_unknown_customer(self, small_instance: Instance) -> None:
        """Test that pricing an unknown index raises UnknownCustomerError."""
        with pytest.raises(UnknownCustomerError):
            route_cost(small_instance, [1, 9])


class TestValidate:
    """Tests for the feasibility validator."""

    def test_feasible_solution(
        self, small_instance: Instance, small_solution: Solution
    ) -> None:
        """Test that a correct solution is feasible with its cost."""
        report = validate(small_instance, small_solution)

        assert report.feasible is True
        assert report.violations == ()
        assert report.recomputed_cost == 32
        assert report.n_routes == 2

    def test_missing_customer(self, small_instance: Instance) -> None:
        """Test that an unvisited customer is reported."""
        report = validate(small_instance, Solution.from_lists([[1, 2], [3, 4]]))

        assert report.feasible is False
        assert report.kinds() == {FindingKind.MISSING_CUSTOMER}
        assert report.violations[0].customer == 5

    def test_duplicated_customer(self, small_instance: Instance) -> None:
        """Test that a customer on two routes is reported."""
        report = validate(small_instance, Solution.from_lists([[1, 2], [2, 3, 4, 5]]))

        assert FindingKind.DUPLICATED_CUSTOMER in report.kinds()

    def test_capacity_excess_reports_amount(self, small_instance: Instance) -> None:
        """Test that an overloaded route reports its excess."""
        report = validate(small_instance, Solution.from_lists([[1, 2, 3], [4, 5]]))

        excess = [f for f in report.violations if f.kind is FindingKind.CAPACITY_EXCESS]
        assert len(excess) == 1
        assert excess[0].route == 1
        assert excess[0].amount == 1

    def test_unknown_index_suppresses_cost(self, small_instance: Instance) -> None:
        """Test that an unknown index is a violation and leaves no cost."""
        solution = Solution(
            routes=(Route(customer_indices=(1, 2, 7)), Route(customer_indices=(3, 4, 5)))
        )

        report = validate(small_instance, solution)

        assert FindingKind.UNKNOWN_INDEX in report.kinds()
        assert report.recomputed_cost is None

    def test_declared_cost_mismatch_is_warning(
        self, small_instance: Instance, small_solution: Solution
    ) -> None:
        """Test that a wrong declared cost warns without failing feasibility."""
        declared = small_solution.model_copy(update={"declared_cost": 40})

        report = validate(small_instance, declared)

        assert report.feasible is True
        assert [w.kind for w in report.warnings] == [FindingKind.COST_MISMATCH]

    def test_extra_routes_allowed(self, small_instance: Instance) -> None:
        """Test that using more routes than k_min is still feasible."""
        report = validate(small_instance, Solution.from_lists([[1], [2], [3], [4], [5]]))

        assert report.feasible is True
        assert report.n_routes == 5

    @given(st.permutations([0, 1]))
    def test_route_order_invariant(self, order: list[int]) -> None:
        """Test that the cost does not depend on route order."""
        instance = Instance(
            name="T-n4-k2",
            depot=Point(x=10, y=10),
            customers=(Point(x=0, y=0), Point(x=20, y=0), Point(x=20, y=20)),
            demands=(5, 5, 5),
            capacity=10,
            k_min=2,
        )
        routes = [[1], [2, 3]]

        report = validate(instance, Solution.from_lists([routes[i] for i in order]))

        assert report.recomputed_cost == solution_cost(instance, Solution.from_lists(routes))

    @given(feasible_pairs(), st.data())
    @settings(max_examples=150, deadline=None)
    def test_random_mutations_detected(
        self, pair: tuple[Instance, list[list[int]]], data: st.DataObject
    ) -> None:
        """Test that dropping, duplicating or overloading is always reported."""
        instance, routes = pair
        assert validate(instance, Solution.from_lists(routes)).feasible

        mutation = data.draw(
            st.sampled_from(
                [
                    FindingKind.MISSING_CUSTOMER,
                    FindingKind.DUPLICATED_CUSTOMER,
                    FindingKind.CAPACITY_EXCESS,
                ]
            )
        )
        customer = data.draw(st.integers(min_value=1, max_value=instance.n_customers))
        if mutation is FindingKind.MISSING_CUSTOMER:
            mutated = [[c for c in route if c != customer] for route in routes]
        elif mutation is FindingKind.DUPLICATED_CUSTOMER:
            mutated = [*routes, [customer]]
        else:
            mutated = [[c for route in routes for c in route]]

        report = validate(instance, Solution.from_lists(mutated))

        assert report.feasible is False
        assert mutation in report.kinds()
