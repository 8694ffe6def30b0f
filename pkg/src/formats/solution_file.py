"""CVRPLib solution files: ``Route #i: c1 c2 ...`` lines and one ``Cost N`` line."""

import re

from src.core.exceptions import FormatError, FormatErrorKind
from src.models.routing import Instance, Route, Solution
from src.services.evaluation import solution_cost

ROUTE_PATTERN = re.compile(r"^Route\s*#\s*(?P<number>\S+?)\s*:(?P<body>.*)$", re.IGNORECASE)
COST_PATTERN = re.compile(r"^Cost\s+(?P<cost>\S+)$", re.IGNORECASE)


def write_solution(instance: Instance, solution: Solution) -> bytes:
    """Serialize a solution; the Cost line is always the recomputed cost.

    Raises:
        UnknownCustomerError: If a route references an unknown customer.
    """
    cost = solution_cost(instance, solution)
    lines = [
        f"Route #{number}: " + " ".join(str(c) for c in route.customer_indices)
        for number, route in enumerate(solution.routes, start=1)
    ]
    lines.append(f"Cost {cost}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_solution(data: bytes) -> Solution:
    """Parse a solution file.

    The declared cost is kept on the solution for the validator to compare;
    it is never used as the authoritative cost.

    Raises:
        FormatError: On empty routes, repeated customers, non-consecutive
            route numbers, malformed lines or a missing/duplicated Cost line.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(
            "input is not valid UTF-8", line=data[: exc.start].count(b"\n") + 1
        ) from None

    routes: list[Route] = []
    seen: dict[int, int] = {}
    declared: int | None = None
    cost_line = 0
    last_line = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        last_line = number

        route_match = ROUTE_PATTERN.match(line)
        if route_match:
            expected = len(routes) + 1
            if route_match["number"] != str(expected):
                raise FormatError(
                    f"route header #{route_match['number']}, expected #{expected}",
                    line=number,
                    kind=FormatErrorKind.MALFORMED_ROUTE_HEADER,
                )
            customers = _route_customers(route_match["body"], number, seen)
            routes.append(Route(customer_indices=tuple(customers)))
            continue

        cost_match = COST_PATTERN.match(line)
        if cost_match:
            if declared is not None:
                raise FormatError(
                    f"second Cost line (first at line {cost_line})",
                    line=number,
                    kind=FormatErrorKind.DUPLICATE_COST,
                )
            try:
                declared = int(cost_match["cost"])
            except ValueError:
                raise FormatError(
                    f"cost {cost_match['cost']!r} is not an integer",
                    line=number,
                    kind=FormatErrorKind.NON_INTEGER_TOKEN,
                ) from None
            cost_line = number
            continue

        raise FormatError(
            f"unrecognised line {line!r}", line=number, kind=FormatErrorKind.MALFORMED_LINE
        )

    if declared is None:
        raise FormatError(
            "missing Cost line", line=last_line + 1, kind=FormatErrorKind.MISSING_COST
        )
    return Solution(routes=tuple(routes), declared_cost=declared)


def _route_customers(body: str, line: int, seen: dict[int, int]) -> list[int]:
    tokens = body.split()
    if not tokens:
        raise FormatError("empty route", line=line, kind=FormatErrorKind.EMPTY_ROUTE)
    customers: list[int] = []
    for token in tokens:
        try:
            customer = int(token)
        except ValueError:
            raise FormatError(
                f"customer {token!r} is not an integer",
                line=line,
                kind=FormatErrorKind.NON_INTEGER_TOKEN,
            ) from None
        if customer < 1:
            raise FormatError(
                f"customer index {customer} must be at least 1",
                line=line,
                kind=FormatErrorKind.MALFORMED_LINE,
            )
        if customer in seen:
            raise FormatError(
                f"customer {customer} already visited on line {seen[customer]}",
                line=line,
                kind=FormatErrorKind.REPEATED_CUSTOMER,
                details={"customer": customer},
            )
        seen[customer] = line
        customers.append(customer)
    return customers
