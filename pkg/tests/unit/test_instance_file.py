"""Unit tests for the CVRPLib instance format."""

import pytest

from src.core.exceptions import FormatError, FormatErrorKind
from src.formats.instance_file import parse_instance, write_instance
from src.models.routing import UNPROVEN_KMIN_TOKEN, Instance

SMALL_FILE = b"""NAME : T-n6-k2
TYPE : CVRP
DIMENSION : 6
EDGE_WEIGHT_TYPE : EUC_2D
CAPACITY : 10
NODE_COORD_SECTION
1 0 0
2 3 0
3 6 0
4 0 4
5 0 8
6 3 8
DEMAND_SECTION
1 0
2 4
3 4
4 3
5 3
6 3
DEPOT_SECTION
1
-1
EOF
"""


def _replace(old: bytes, new: bytes) -> bytes:
    assert old in SMALL_FILE
    return SMALL_FILE.replace(old, new, 1)


def _error(data: bytes) -> FormatError:
    with pytest.raises(FormatError) as info:
        parse_instance(data)
    return info.value


def _with(instance: Instance, **changes: object) -> Instance:
    return Instance.model_validate({**instance.model_dump(), **changes})


class TestWriteInstance:
    """Tests for instance serialization."""

    def test_canonical_layout(self, small_instance: Instance) -> None:
        """Test that a proven instance without comment writes the canonical file."""
        assert write_instance(small_instance) == SMALL_FILE

    def test_comment_line(self, small_instance: Instance) -> None:
        """Test that a comment is written right after NAME."""
        commented = small_instance.model_copy(update={"comment": "seed=3 r=7.8"})

        lines = write_instance(commented).decode().splitlines()

        assert lines[1] == "COMMENT : seed=3 r=7.8"

    def test_unproven_token_added(self, small_instance: Instance) -> None:
        """Test that an unproven K_min is recorded in the comment."""
        unproven = _with(small_instance, k_min_proven=False)

        parsed = parse_instance(write_instance(unproven))

        assert parsed.comment == UNPROVEN_KMIN_TOKEN
        assert parsed.k_min_proven is False

    @pytest.mark.parametrize(
        ("comment", "proven"),
        [
            ("seed=3   r=7.8\tkmin=proven", True),
            ("seed=3 r=7.8", False),
            (f"{UNPROVEN_KMIN_TOKEN} seed=3", False),
            (f"seed=3 {UNPROVEN_KMIN_TOKEN}", True),
            ("  ", True),
        ],
    )
    def test_comment_round_trips(
        self, small_instance: Instance, comment: str, proven: bool
    ) -> None:
        """Test that parse inverts write for any comment and proof flag."""
        instance = _with(small_instance, comment=comment, k_min_proven=proven)

        assert parse_instance(write_instance(instance)) == instance


class TestParseInstance:
    """Tests for instance parsing."""

    def test_parse_small_file(self, small_instance: Instance) -> None:
        """Test that the canonical file parses to the fixture instance."""
        assert parse_instance(SMALL_FILE) == small_instance

    def test_round_trip_bytes(self, small_instance: Instance) -> None:
        """Test that parse then write reproduces the bytes."""
        commented = small_instance.model_copy(update={"comment": "generated"})
        data = write_instance(commented)

        assert write_instance(parse_instance(data)) == data

    def test_free_whitespace_and_header_order(self, small_instance: Instance) -> None:
        """Test that spacing and header order are free."""
        data = _replace(
            b"NAME : T-n6-k2\nTYPE : CVRP\n", b"TYPE:CVRP\nNAME   :   T-n6-k2\n"
        )
        data = data.replace(b"2 3 0", b"  2\t3   0  ")

        assert parse_instance(data) == small_instance

    def test_unknown_header_ignored(self, small_instance: Instance) -> None:
        """Test that unrecognised header keys are skipped."""
        data = _replace(b"TYPE : CVRP\n", b"TYPE : CVRP\nVEHICLES : 2\n")

        assert parse_instance(data) == small_instance

    def test_missing_eof_accepted(self, small_instance: Instance) -> None:
        """Test that the EOF terminator is optional."""
        assert parse_instance(_replace(b"EOF\n", b"")) == small_instance

    def test_missing_header(self) -> None:
        """Test that a missing CAPACITY is reported."""
        error = _error(_replace(b"CAPACITY : 10\n", b""))

        assert error.kind is FormatErrorKind.MISSING_HEADER

    def test_dimension_mismatch(self) -> None:
        """Test that too few coordinate rows point at the section line."""
        error = _error(_replace(b"6 3 8\n", b""))

        assert error.kind is FormatErrorKind.DIMENSION_MISMATCH
        assert error.line == 6

    def test_non_integer_coordinate(self) -> None:
        """Test that a decimal coordinate is rejected with its line."""
        error = _error(_replace(b"3 6 0\n", b"3 6.5 0\n"))

        assert error.kind is FormatErrorKind.NON_INTEGER_TOKEN
        assert error.line == 9
        assert "line 9" in str(error)

    def test_nonzero_depot_demand(self) -> None:
        """Test that the depot must have demand 0."""
        error = _error(_replace(b"1 0\n2 4", b"1 2\n2 4"))

        assert error.kind is FormatErrorKind.DEPOT_DEMAND

    def test_demand_above_capacity(self) -> None:
        """Test that a customer demand larger than Q is rejected."""
        error = _error(_replace(b"6 3\n", b"6 11\n"))

        assert error.kind is FormatErrorKind.DEMAND_RANGE
        assert error.line == 19

    def test_coordinate_outside_grid(self) -> None:
        """Test that coordinates beyond 1000 are rejected."""
        error = _error(_replace(b"5 0 8\n", b"5 0 1001\n"))

        assert error.kind is FormatErrorKind.COORDINATE_RANGE

    def test_unsupported_edge_weight(self) -> None:
        """Test that only EUC_2D is accepted."""
        error = _error(_replace(b"EUC_2D", b"EXPLICIT"))

        assert error.kind is FormatErrorKind.UNSUPPORTED_EDGE_WEIGHT
        assert error.line == 4

    def test_unsupported_section(self) -> None:
        """Test that explicit weight sections are refused."""
        error = _error(_replace(b"DEPOT_SECTION", b"EDGE_WEIGHT_SECTION\nDEPOT_SECTION"))

        assert error.kind is FormatErrorKind.UNSUPPORTED_EDGE_WEIGHT
        assert error.line == 20

    def test_unsupported_type(self) -> None:
        """Test that non-CVRP types are rejected."""
        error = _error(_replace(b"TYPE : CVRP", b"TYPE : TSP"))

        assert error.kind is FormatErrorKind.UNSUPPORTED_TYPE

    def test_missing_section(self) -> None:
        """Test that a file without DEPOT_SECTION is rejected."""
        error = _error(_replace(b"DEPOT_SECTION\n1\n-1\n", b""))

        assert error.kind is FormatErrorKind.MISSING_SECTION

    def test_second_depot_rejected(self) -> None:
        """Test that only node 1 may be a depot."""
        error = _error(_replace(b"DEPOT_SECTION\n1\n", b"DEPOT_SECTION\n1\n2\n"))

        assert error.kind is FormatErrorKind.MALFORMED_LINE

    def test_name_inconsistent_with_dimension(self) -> None:
        """Test that the name must match DIMENSION."""
        error = _error(_replace(b"NAME : T-n6-k2", b"NAME : T-n7-k2"))

        assert error.kind is FormatErrorKind.INVALID_INSTANCE
        assert error.line == 1

    def test_invalid_utf8(self) -> None:
        """Test that undecodable bytes report their line."""
        error = _error(_replace(b"TYPE : CVRP", b"TYPE : \xff"))

        assert error.line == 2
