"""Unit tests for the CVRPLib solution format."""

import pytest

from src.core.exceptions import FormatError, FormatErrorKind
from src.formats.solution_file import parse_solution, write_solution
from src.models.routing import Instance, Solution


def _error(text: str) -> FormatError:
    with pytest.raises(FormatError) as info:
        parse_solution(text.encode())
    return info.value


class TestWriteSolution:
    """Tests for solution serialization."""

    def test_layout(self, small_instance: Instance, small_solution: Solution) -> None:
        """Test route lines and the recomputed Cost line."""
        data = write_solution(small_instance, small_solution)

        assert data == b"Route #1: 1 2\nRoute #2: 3 4 5\nCost 32\n"

    def test_cost_is_recomputed(
        self, small_instance: Instance, small_solution: Solution
    ) -> None:
        """Test that a wrong declared cost is never written."""
        declared = small_solution.model_copy(update={"declared_cost": 1})

        assert write_solution(small_instance, declared).endswith(b"Cost 32\n")


class TestParseSolution:
    """Tests for solution parsing."""

    def test_parse_round_trip(
        self, small_instance: Instance, small_solution: Solution
    ) -> None:
        """Test that a written solution parses back with its declared cost."""
        parsed = parse_solution(write_solution(small_instance, small_solution))

        assert parsed.as_lists() == small_solution.as_lists()
        assert parsed.declared_cost == 32

    def test_flexible_spacing(self) -> None:
        """Test spacing variants accepted by CVRPLib readers."""
        parsed = parse_solution(b"Route #1:  5 4\n\nroute # 2 : 1\ncost 17\n")

        assert parsed.as_lists() == [[4, 5], [1]]
        assert parsed.declared_cost == 17

    def test_empty_route(self) -> None:
        """Test that a route without customers is rejected."""
        error = _error("Route #1: 1 2\nRoute #2:\nCost 5\n")

        assert error.kind is FormatErrorKind.EMPTY_ROUTE
        assert error.line == 2

    def test_repeated_customer_across_routes(self) -> None:
        """Test that a customer on two routes is rejected at the second."""
        error = _error("Route #1: 1 2\nRoute #2: 3 2\nCost 5\n")

        assert error.kind is FormatErrorKind.REPEATED_CUSTOMER
        assert error.line == 2

    def test_route_numbers_consecutive(self) -> None:
        """Test that route numbers must count up from 1."""
        error = _error("Route #1: 1\nRoute #3: 2\nCost 5\n")

        assert error.kind is FormatErrorKind.MALFORMED_ROUTE_HEADER

    def test_missing_cost(self) -> None:
        """Test that the Cost line is required."""
        error = _error("Route #1: 1 2\n")

        assert error.kind is FormatErrorKind.MISSING_COST

    def test_duplicate_cost(self) -> None:
        """Test that a second Cost line is rejected."""
        error = _error("Route #1: 1\nCost 5\nCost 6\n")

        assert error.kind is FormatErrorKind.DUPLICATE_COST
        assert error.line == 3

    def test_non_integer_customer(self) -> None:
        """Test that customer tokens must be integers."""
        error = _error("Route #1: 1 x\nCost 5\n")

        assert error.kind is FormatErrorKind.NON_INTEGER_TOKEN

    def test_depot_index_rejected(self) -> None:
        """Test that index 0 cannot appear in a route."""
        error = _error("Route #1: 0 1\nCost 5\n")

        assert error.kind is FormatErrorKind.MALFORMED_LINE

    def test_garbage_line(self) -> None:
        """Test that unrelated text is reported."""
        error = _error("hello\n")

        assert error.kind is FormatErrorKind.MALFORMED_LINE
        assert error.line == 1
