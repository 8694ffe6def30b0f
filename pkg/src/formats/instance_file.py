"""CVRPLib instance files (TSPLIB-style, EUC_2D, single depot at node 1)."""

from dataclasses import dataclass, field

from pydantic import ValidationError

from src.core.exceptions import FormatError, FormatErrorKind
from src.models.routing import (
    GRID_MAX,
    UNPROVEN_KMIN_TOKEN,
    Instance,
    Point,
    parse_instance_name,
)

SECTIONS = ("NODE_COORD_SECTION", "DEMAND_SECTION", "DEPOT_SECTION")
REQUIRED_HEADERS = ("NAME", "DIMENSION", "EDGE_WEIGHT_TYPE", "CAPACITY")


def write_instance(instance: Instance) -> bytes:
    """Serialize an instance in canonical CVRPLib layout.

    Args:
        instance: Instance to write.

    Returns:
        UTF-8 bytes; single spaces, newline-terminated lines, depot as node 1.
    """
    lines = [f"NAME : {instance.name}"]
    if instance.comment:
        lines.append(f"COMMENT : {instance.comment}")
    lines += [
        "TYPE : CVRP",
        f"DIMENSION : {instance.n_total}",
        "EDGE_WEIGHT_TYPE : EUC_2D",
        f"CAPACITY : {instance.capacity}",
        "NODE_COORD_SECTION",
    ]
    for node, (x, y) in enumerate(zip(instance.xs, instance.ys, strict=True), start=1):
        lines.append(f"{node} {x} {y}")
    lines.append("DEMAND_SECTION")
    for node, demand in enumerate(instance.node_demands, start=1):
        lines.append(f"{node} {demand}")
    lines += ["DEPOT_SECTION", "1", "-1", "EOF"]
    return ("\n".join(lines) + "\n").encode("utf-8")


@dataclass
class _Section:
    name: str
    line: int
    rows: list[tuple[int, list[str]]] = field(default_factory=list)


def _integer(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(
            f"{what} {token!r} is not an integer",
            line=line,
            kind=FormatErrorKind.NON_INTEGER_TOKEN,
        ) from None


def _split_lines(data: bytes) -> list[tuple[int, str]]:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise FormatError("input is not valid UTF-8", line=line) from None
    return [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip()
    ]


def _read_structure(
    data: bytes,
) -> tuple[dict[str, tuple[int, str]], dict[str, _Section], int]:
    """Split a file into header values and raw section rows."""
    headers: dict[str, tuple[int, str]] = {}
    sections: dict[str, _Section] = {}
    current: _Section | None = None
    last_line = 0

    for number, text in _split_lines(data):
        last_line = number
        keyword = text.split(":", 1)[0].strip().upper()
        if keyword == "EOF":
            break
        if keyword in SECTIONS and ":" not in text:
            current = _Section(name=keyword, line=number)
            sections[keyword] = current
            continue
        if keyword.endswith("_SECTION"):
            # unsupported sections (EDGE_WEIGHT_SECTION, ...) are rejected outright
            raise FormatError(
                f"unsupported section {keyword}",
                line=number,
                kind=FormatErrorKind.UNSUPPORTED_EDGE_WEIGHT,
            )
        if current is None:
            if ":" not in text:
                raise FormatError(
                    f"expected 'KEY : VALUE', got {text!r}",
                    line=number,
                    kind=FormatErrorKind.MALFORMED_LINE,
                )
            key, value = text.split(":", 1)
            headers[key.strip().upper()] = (number, value.strip())
            continue
        current.rows.append((number, text.split()))

    return headers, sections, last_line


def _header_int(headers: dict[str, tuple[int, str]], key: str) -> tuple[int, int]:
    line, value = headers[key]
    return _integer(value, line, key), line


def parse_instance(data: bytes) -> Instance:
    """Parse a CVRPLib instance file.

    Whitespace runs and header order are free; unknown header keys are
    ignored; the EOF terminator is optional. Section contents are strict.

    Args:
        data: Raw file contents.

    Returns:
        The parsed Instance; K_min is taken from the name.

    Raises:
        FormatError: With the offending line number and a diagnostic kind.
    """
    headers, sections, last_line = _read_structure(data)

    for key in REQUIRED_HEADERS:
        if key not in headers:
            raise FormatError(
                f"missing header {key}", line=last_line, kind=FormatErrorKind.MISSING_HEADER
            )
    type_line, type_value = headers.get("TYPE", (0, "CVRP"))
    if type_value.upper() != "CVRP":
        raise FormatError(
            f"unsupported TYPE {type_value}",
            line=type_line,
            kind=FormatErrorKind.UNSUPPORTED_TYPE,
        )
    weight_line, weight_type = headers["EDGE_WEIGHT_TYPE"]
    if weight_type.upper() != "EUC_2D":
        raise FormatError(
            f"unsupported EDGE_WEIGHT_TYPE {weight_type}",
            line=weight_line,
            kind=FormatErrorKind.UNSUPPORTED_EDGE_WEIGHT,
        )
    for name in SECTIONS:
        if name not in sections:
            raise FormatError(
                f"missing {name}", line=last_line, kind=FormatErrorKind.MISSING_SECTION
            )

    dimension, dimension_line = _header_int(headers, "DIMENSION")
    capacity, capacity_line = _header_int(headers, "CAPACITY")
    if dimension < 2:
        raise FormatError(
            f"DIMENSION {dimension} leaves no customers",
            line=dimension_line,
            kind=FormatErrorKind.DIMENSION_MISMATCH,
        )
    if capacity <= 0:
        raise FormatError(
            f"CAPACITY {capacity} must be positive",
            line=capacity_line,
            kind=FormatErrorKind.INVALID_VALUE,
        )

    coords = _node_table(sections["NODE_COORD_SECTION"], dimension, 2)
    demand_rows = _node_table(sections["DEMAND_SECTION"], dimension, 1)
    _check_depot_section(sections["DEPOT_SECTION"])

    points: list[Point] = []
    for node in range(1, dimension + 1):
        line, (x, y) = coords[node]
        if not (0 <= x <= GRID_MAX and 0 <= y <= GRID_MAX):
            raise FormatError(
                f"node {node} at ({x}, {y}) is outside [0, {GRID_MAX}]^2",
                line=line,
                kind=FormatErrorKind.COORDINATE_RANGE,
            )
        points.append(Point(x=x, y=y))

    depot_line, (depot_demand,) = demand_rows[1]
    if depot_demand != 0:
        raise FormatError(
            f"depot demand is {depot_demand}, expected 0",
            line=depot_line,
            kind=FormatErrorKind.DEPOT_DEMAND,
        )
    demands: list[int] = []
    for node in range(2, dimension + 1):
        line, (demand,) = demand_rows[node]
        if not 1 <= demand <= capacity:
            raise FormatError(
                f"demand {demand} of node {node} outside [1, {capacity}]",
                line=line,
                kind=FormatErrorKind.DEMAND_RANGE,
            )
        demands.append(demand)

    name_line, name = headers["NAME"]
    comment = headers.get("COMMENT", (0, ""))[1]
    try:
        _, _, bound = parse_instance_name(name)
        return Instance(
            name=name,
            depot=points[0],
            customers=tuple(points[1:]),
            demands=tuple(demands),
            capacity=capacity,
            k_min=bound,
            k_min_proven=UNPROVEN_KMIN_TOKEN not in comment.split(),
            comment=comment,
        )
    except (ValueError, ValidationError) as exc:
        raise FormatError(
            f"inconsistent instance: {exc}",
            line=name_line,
            kind=FormatErrorKind.INVALID_INSTANCE,
        ) from None


def _node_table(
    section: _Section, dimension: int, width: int
) -> dict[int, tuple[int, list[int]]]:
    """Index section rows by node, checking count, width and integrality."""
    if len(section.rows) != dimension:
        raise FormatError(
            f"{section.name} has {len(section.rows)} lines, DIMENSION is {dimension}",
            line=section.line,
            kind=FormatErrorKind.DIMENSION_MISMATCH,
        )
    table: dict[int, tuple[int, list[int]]] = {}
    for line, tokens in section.rows:
        if len(tokens) != width + 1:
            raise FormatError(
                f"expected {width + 1} fields, got {len(tokens)}",
                line=line,
                kind=FormatErrorKind.MALFORMED_LINE,
            )
        node = _integer(tokens[0], line, "node index")
        values = [_integer(token, line, "value") for token in tokens[1:]]
        if not 1 <= node <= dimension or node in table:
            raise FormatError(
                f"node index {node} is out of range or repeated",
                line=line,
                kind=FormatErrorKind.MALFORMED_LINE,
            )
        table[node] = (line, values)
    return table


def _check_depot_section(section: _Section) -> None:
    depots = []
    for line, tokens in section.rows:
        for token in tokens:
            value = _integer(token, line, "depot")
            if value == -1:
                break
            depots.append((line, value))
    if [value for _, value in depots] != [1]:
        line = depots[0][0] if depots else section.line
        raise FormatError(
            "DEPOT_SECTION must list exactly node 1",
            line=line,
            kind=FormatErrorKind.MALFORMED_LINE,
        )
