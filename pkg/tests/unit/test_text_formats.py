"""Unit tests for generator manifests and challenge event logs."""

from pathlib import Path

import pytest

from src.core.exceptions import FormatError, FormatErrorKind, ManifestError
from src.formats.event_log import parse_day_offset, parse_event_log
from src.formats.manifest import format_manifest, parse_manifest
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    RouteClass,
)


class TestManifest:
    """Tests for generator manifests."""

    def test_parse_rows(self) -> None:
        """Test comments, blank lines and attribute parsing."""
        text = "# n_total, depot, customers, demand, route_class, seed\n\n1094, C, C, U, VS, 2\n1141,R,RC,50-100,S,3  # trailing\n"

        specs = parse_manifest(text)

        assert len(specs) == 2
        assert specs[0].n_total == 1094
        assert specs[0].depot_pos is DepotPosition.CENTRAL
        assert specs[0].demand_dist is DemandDistribution.UNITARY
        assert specs[1].customer_pos is CustomerPosition.RANDOM_CLUSTERED
        assert specs[1].route_class is RouteClass.SHORT
        assert specs[1].master_seed == 3

    def test_header_row_skipped(self) -> None:
        """Test that a CSV-style header row is ignored."""
        specs = parse_manifest("n_total,depot,customers,demand,route_class,seed\n200,R,R,Q,M,9\n")

        assert [spec.master_seed for spec in specs] == [9]

    def test_wrong_field_count(self) -> None:
        """Test that a short row reports its line."""
        with pytest.raises(ManifestError) as info:
            parse_manifest("200, R, R, Q, M, 1\n200, R, R, Q\n")

        assert info.value.line == 2
        assert info.value.kind is FormatErrorKind.MALFORMED_LINE

    def test_unknown_level(self) -> None:
        """Test that an unknown attribute level reports its line."""
        with pytest.raises(ManifestError) as info:
            parse_manifest("# header\n200, X, R, Q, M, 1\n")

        assert info.value.line == 2
        assert info.value.kind is FormatErrorKind.INVALID_VALUE

    def test_non_integer_seed(self) -> None:
        """Test that seeds must be integers."""
        with pytest.raises(ManifestError) as info:
            parse_manifest("200, R, R, Q, M, one\n")

        assert info.value.kind is FormatErrorKind.NON_INTEGER_TOKEN

    def test_format_then_parse(self) -> None:
        """Test that formatted specs parse back unchanged."""
        specs = parse_manifest("200, E, RC, SL, UL, 18446744073709551615\n")

        assert parse_manifest(format_manifest(specs)) == specs


class TestDayOffset:
    """Tests for event time parsing."""

    @pytest.mark.parametrize(
        ("token", "days"),
        [("5", 5.0), ("12.25", 12.25), ("P5D", 5.0), ("P12DT6H", 12.25), ("PT36H", 1.5)],
    )
    def test_forms(self, token: str, days: float) -> None:
        """Test decimal days and ISO-8601 durations."""
        assert parse_day_offset(token) == pytest.approx(days)

    @pytest.mark.parametrize("token", ["-1", "P", "soon", "nan"])
    def test_invalid(self, token: str) -> None:
        """Test that negative, empty or textual offsets are rejected."""
        with pytest.raises(ValueError):
            parse_day_offset(token)


class TestEventLog:
    """Tests for challenge event logs."""

    def test_cost_and_path_events(self, tmp_path: Path) -> None:
        """Test integer payloads as costs and others as relative paths."""
        text = "# comment\n5, A, X-n101-k10, 990\nP6D, B, X-n101-k10, sols/b.sol\n"

        events = parse_event_log(text, base_dir=tmp_path)

        assert events[0].cost == 990
        assert events[0].solution_path is None
        assert events[0].line == 2
        assert events[1].time == 6.0
        assert events[1].solution_path == tmp_path / "sols" / "b.sol"

    def test_malformed_line(self) -> None:
        """Test that a line without four fields reports its number."""
        with pytest.raises(FormatError) as info:
            parse_event_log("5, A, X-n101-k10, 990\n6, B, X-n101-k10\n")

        assert info.value.line == 2
        assert info.value.kind is FormatErrorKind.MALFORMED_LINE

    def test_invalid_time(self) -> None:
        """Test that a bad time field is reported as INVALID_TIME."""
        with pytest.raises(FormatError) as info:
            parse_event_log("tomorrow, A, X-n101-k10, 990\n")

        assert info.value.kind is FormatErrorKind.INVALID_TIME

    def test_nonpositive_cost(self) -> None:
        """Test that replayed costs must be positive."""
        with pytest.raises(FormatError) as info:
            parse_event_log("1, A, X-n101-k10, 0\n")

        assert info.value.kind is FormatErrorKind.INVALID_VALUE

    def test_empty_log(self) -> None:
        """Test that an empty log has no events."""
        assert parse_event_log("") == []
