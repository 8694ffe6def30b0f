"""Instance, route and solution models with their structural invariants."""

import math
import re
from enum import Enum
from functools import cached_property
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

GRID_MAX = 1000

INSTANCE_NAME_PATTERN = re.compile(r"^(?P<family>[A-Za-z]+)-n(?P<a>\d+)-k(?P<b>\d+)$")

# COMMENT token marking K_min as an upper bound rather than a proven optimum
UNPROVEN_KMIN_TOKEN = "kmin=ffd-bound"


class Point(BaseModel):
    """Integer grid point on the [0,1000] x [0,1000] square."""

    model_config = ConfigDict(frozen=True)

    x: int = Field(..., ge=0, le=GRID_MAX, description="Horizontal coordinate")
    y: int = Field(..., ge=0, le=GRID_MAX, description="Vertical coordinate")

    def as_tuple(self) -> tuple[int, int]:
        """Return the point as an (x, y) tuple."""
        return (self.x, self.y)


def parse_instance_name(name: str) -> tuple[str, int, int]:
    """Split a CVRPLib-style name into (family, A, B).

    Args:
        name: Instance name such as ``XL-n1094-k157``.

    Returns:
        Tuple of family prefix, total point count A and route bound B.

    Raises:
        ValueError: If the name does not follow the ``<family>-n<A>-k<B>`` format.
    """
    match = INSTANCE_NAME_PATTERN.match(name)
    if match is None:
        raise ValueError(f"instance name {name!r} does not match <family>-n<A>-k<B>")
    return match["family"], int(match["a"]), int(match["b"])


def format_instance_name(n_total: int, k_min: int, family: str = "XL") -> str:
    """Assemble an instance name from its point count and route bound."""
    return f"{family}-n{n_total}-k{k_min}"


class Instance(BaseModel):
    """A CVRP instance: depot, customers, demands, capacity and K_min.

    Customers are indexed from 1 in routes; index 0 is the depot.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Instance name, <family>-n<A>-k<B>")
    depot: Point = Field(..., description="Depot location")
    customers: tuple[Point, ...] = Field(..., min_length=1, description="Customers")
    demands: tuple[int, ...] = Field(..., min_length=1, description="Customer demands")
    capacity: int = Field(..., gt=0, description="Vehicle capacity Q")
    k_min: int = Field(..., gt=0, description="Minimum number of routes")
    k_min_proven: bool = Field(default=True, description="K_min is a proven optimum")
    comment: str = Field(default="", description="Free-text provenance summary")

    @model_validator(mode="before")
    @classmethod
    def _normalise_comment(cls, data: Any) -> Any:
        # single spaces; the unproven token is present exactly when K_min is a bound
        if not isinstance(data, dict):
            return data
        tokens = [
            token
            for token in str(data.get("comment", "")).split()
            if token != UNPROVEN_KMIN_TOKEN
        ]
        if data.get("k_min_proven", True) is False:
            tokens.append(UNPROVEN_KMIN_TOKEN)
        return {**data, "comment": " ".join(tokens)}

    @model_validator(mode="after")
    def _check_invariants(self) -> "Instance":
        if len(self.demands) != len(self.customers):
            raise ValueError(
                f"{len(self.demands)} demands for {len(self.customers)} customers"
            )

        _, total, bound = parse_instance_name(self.name)
        if total != len(self.customers) + 1:
            raise ValueError(
                f"name declares n{total} but instance has {len(self.customers) + 1} points"
            )
        if bound != self.k_min:
            raise ValueError(f"name declares k{bound} but k_min is {self.k_min}")

        for index, demand in enumerate(self.demands, start=1):
            if not 1 <= demand <= self.capacity:
                raise ValueError(
                    f"demand {demand} of customer {index} outside [1, {self.capacity}]"
                )

        continuous_bound = math.ceil(sum(self.demands) / self.capacity)
        if self.k_min < continuous_bound:
            raise ValueError(
                f"k_min {self.k_min} below continuous bound {continuous_bound}"
            )

        seen = {self.depot.as_tuple()}
        for index, point in enumerate(self.customers, start=1):
            key = point.as_tuple()
            if key in seen:
                raise ValueError(f"customer {index} at {key} coincides with another point")
            seen.add(key)
        return self

    @property
    def n_customers(self) -> int:
        """Number of customers (A - 1)."""
        return len(self.customers)

    @property
    def n_total(self) -> int:
        """Number of points including the depot (A)."""
        return len(self.customers) + 1

    @property
    def total_demand(self) -> int:
        """Sum of all customer demands."""
        return sum(self.demands)

    @cached_property
    def xs(self) -> tuple[int, ...]:
        """Horizontal coordinates indexed by node, depot at 0."""
        return (self.depot.x, *(point.x for point in self.customers))

    @cached_property
    def ys(self) -> tuple[int, ...]:
        """Vertical coordinates indexed by node, depot at 0."""
        return (self.depot.y, *(point.y for point in self.customers))

    @cached_property
    def node_demands(self) -> tuple[int, ...]:
        """Demands indexed by node, depot demand 0 at index 0."""
        return (0, *self.demands)


class Route(BaseModel):
    """One vehicle route over 1-based customer indices; depot implicit at both ends.

    Routes are undirected for cost purposes and are stored in the orientation
    whose first customer index is smaller than its last.
    """

    model_config = ConfigDict(frozen=True)

    customer_indices: tuple[int, ...] = Field(
        ..., min_length=1, description="Visited customers in order"
    )

    @field_validator("customer_indices")
    @classmethod
    def _canonical_orientation(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(index < 1 for index in value):
            raise ValueError("customer indices are 1-based and positive")
        if len(set(value)) != len(value):
            raise ValueError("a customer repeats within the route")
        if value[0] > value[-1]:
            return value[::-1]
        return value

    def __len__(self) -> int:
        return len(self.customer_indices)


class Solution(BaseModel):
    """An ordered collection of routes.

    The cost is always recomputed from the instance; ``declared_cost`` only
    records what a parsed file claimed.
    """

    model_config = ConfigDict(frozen=True)

    routes: tuple[Route, ...] = Field(default_factory=tuple, description="Routes")
    declared_cost: int | None = Field(
        default=None, description="Cost stated by the source file, if any"
    )

    @classmethod
    def from_lists(cls, routes: list[list[int]] | list[tuple[int, ...]]) -> "Solution":
        """Build a solution from plain index lists, skipping empty ones."""
        return cls(
            routes=tuple(
                Route(customer_indices=tuple(route)) for route in routes if route
            )
        )

    def as_lists(self) -> list[list[int]]:
        """Return routes as plain index lists."""
        return [list(route.customer_indices) for route in self.routes]


class FindingKind(str, Enum):
    """Kinds of validator findings."""

    MISSING_CUSTOMER = "missing_customer"
    DUPLICATED_CUSTOMER = "duplicated_customer"
    CAPACITY_EXCESS = "capacity_excess"
    UNKNOWN_INDEX = "unknown_index"
    COST_MISMATCH = "cost_mismatch"


class Finding(BaseModel):
    """A single validator finding."""

    model_config = ConfigDict(frozen=True)

    kind: FindingKind = Field(..., description="Finding kind")
    customer: int | None = Field(default=None, description="Customer index involved")
    route: int | None = Field(default=None, description="1-based route number")
    amount: int | None = Field(default=None, description="Overload or cost difference")
    message: str = Field(..., description="Human-readable description")


class ValidationReport(BaseModel):
    """Outcome of validating a solution against an instance."""

    model_config = ConfigDict(frozen=True)

    feasible: bool = Field(..., description="True iff there are no violations")
    violations: tuple[Finding, ...] = Field(default_factory=tuple)
    warnings: tuple[Finding, ...] = Field(default_factory=tuple)
    recomputed_cost: int | None = Field(
        default=None, description="Cost recomputed from the instance"
    )
    n_routes: int = Field(..., ge=0, description="Number of routes in the solution")

    @model_validator(mode="after")
    def _feasible_iff_clean(self) -> "ValidationReport":
        if self.feasible == bool(self.violations):
            raise ValueError("feasible must hold exactly when there are no violations")
        return self

    def kinds(self) -> set[FindingKind]:
        """Return the set of violation kinds present."""
        return {finding.kind for finding in self.violations}
