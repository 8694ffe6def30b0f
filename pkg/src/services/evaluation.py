"""Rounded-Euclidean costs and the solution feasibility validator."""

import math
from collections import Counter

from src.core.exceptions import UnknownCustomerError
from src.core.logging import get_logger
from src.models.routing import (
    Finding,
    FindingKind,
    Instance,
    Point,
    Solution,
    ValidationReport,
)

logger = get_logger(__name__)


def nint_sqrt(value: int) -> int:
    """Return floor(sqrt(value) + 0.5) computed exactly in integers.

    sqrt(v) >= r + 0.5 holds iff v >= r^2 + r + 0.25, i.e. v > r^2 + r for
    integer v, so no floating point is involved.
    """
    root = math.isqrt(value)
    return root + 1 if value > root * root + root else root


def rounded_distance(ax: int, ay: int, bx: int, by: int) -> int:
    """EUC_2D distance between two integer coordinate pairs."""
    dx = ax - bx
    dy = ay - by
    return nint_sqrt(dx * dx + dy * dy)


def euclid_cost(a: Point, b: Point) -> int:
    """Rounded Euclidean distance between two grid points.

    Args:
        a: First point.
        b: Second point.

    Returns:
        nint(sqrt((ax-bx)^2 + (ay-by)^2)).
    """
    return rounded_distance(a.x, a.y, b.x, b.y)


def route_cost(instance: Instance, customers: tuple[int, ...] | list[int]) -> int:
    """Cost of one route including both depot legs.

    Raises:
        UnknownCustomerError: If an index is outside 1..n_customers.
    """
    xs, ys = instance.xs, instance.ys
    n = instance.n_customers
    previous = 0
    total = 0
    for customer in customers:
        if not 1 <= customer <= n:
            raise UnknownCustomerError(
                f"customer index {customer} is not in 1..{n}",
                details={"customer": customer, "instance": instance.name},
            )
        total += rounded_distance(xs[previous], ys[previous], xs[customer], ys[customer])
        previous = customer
    return total + rounded_distance(xs[previous], ys[previous], xs[0], ys[0])


def solution_cost(instance: Instance, solution: Solution) -> int:
    """Total rounded-Euclidean cost of a solution.

    Args:
        instance: Instance the routes refer to.
        solution: Routes to price.

    Returns:
        Sum of route costs; independent of route order and orientation.

    Raises:
        UnknownCustomerError: If any route references an unknown customer.
    """
    return sum(route_cost(instance, route.customer_indices) for route in solution.routes)


def validate(instance: Instance, solution: Solution) -> ValidationReport:
    """Check coverage and capacity of a solution, reporting every violation.

    Args:
        instance: Instance to validate against.
        solution: Candidate solution; any number of routes is allowed.

    Returns:
        ValidationReport listing all findings and the recomputed cost when
        every index is known.
    """
    n = instance.n_customers
    demands = instance.node_demands
    violations: list[Finding] = []
    warnings: list[Finding] = []
    visits: Counter[int] = Counter()

    for number, route in enumerate(solution.routes, start=1):
        load = 0
        for customer in route.customer_indices:
            if not 1 <= customer <= n:
                violations.append(
                    Finding(
                        kind=FindingKind.UNKNOWN_INDEX,
                        customer=customer,
                        route=number,
                        message=f"route {number} visits unknown customer {customer}",
                    )
                )
                continue
            visits[customer] += 1
            load += demands[customer]
        if load > instance.capacity:
            violations.append(
                Finding(
                    kind=FindingKind.CAPACITY_EXCESS,
                    route=number,
                    amount=load - instance.capacity,
                    message=(
                        f"route {number} carries {load} > capacity "
                        f"{instance.capacity} (excess {load - instance.capacity})"
                    ),
                )
            )

    for customer in range(1, n + 1):
        count = visits[customer]
        if count == 0:
            violations.append(
                Finding(
                    kind=FindingKind.MISSING_CUSTOMER,
                    customer=customer,
                    message=f"customer {customer} is not visited",
                )
            )
        elif count > 1:
            violations.append(
                Finding(
                    kind=FindingKind.DUPLICATED_CUSTOMER,
                    customer=customer,
                    amount=count,
                    message=f"customer {customer} is visited {count} times",
                )
            )

    recomputed: int | None = None
    if not any(finding.kind is FindingKind.UNKNOWN_INDEX for finding in violations):
        recomputed = solution_cost(instance, solution)
        declared = solution.declared_cost
        if declared is not None and declared != recomputed:
            warnings.append(
                Finding(
                    kind=FindingKind.COST_MISMATCH,
                    amount=declared - recomputed,
                    message=f"declared cost {declared} differs from recomputed {recomputed}",
                )
            )

    report = ValidationReport(
        feasible=not violations,
        violations=tuple(violations),
        warnings=tuple(warnings),
        recomputed_cost=recomputed,
        n_routes=len(solution.routes),
    )
    logger.debug(
        "solution_validated",
        instance=instance.name,
        feasible=report.feasible,
        violations=len(report.violations),
        cost=recomputed,
    )
    return report
