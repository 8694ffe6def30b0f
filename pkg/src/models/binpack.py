"""Bin packing problem and result models."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BinPackMethod(str, Enum):
    """How a bin count was established."""

    L1_MATCH = "L1match"
    L2_MATCH = "L2match"
    BRANCH_AND_BOUND = "BranchAndBound"
    TIMED_OUT = "TimedOut"


class BinPackProblem(BaseModel):
    """A multiset of positive item sizes and a common bin capacity.

    Items larger than the capacity are allowed here so that the solver can
    report them; every operation that needs a feasible problem checks first.
    """

    model_config = ConfigDict(frozen=True)

    items: tuple[int, ...] = Field(default_factory=tuple, description="Item sizes")
    capacity: int = Field(..., gt=0, description="Bin capacity")

    @model_validator(mode="after")
    def _positive_items(self) -> "BinPackProblem":
        if any(item <= 0 for item in self.items):
            raise ValueError("item sizes must be positive")
        return self

    @property
    def total(self) -> int:
        """Sum of item sizes."""
        return sum(self.items)


class BinPackResult(BaseModel):
    """Outcome of the minimum bin count computation."""

    model_config = ConfigDict(frozen=True)

    bins: int = Field(..., ge=0, description="Best bin count found")
    proven_optimal: bool = Field(..., description="bins equals the true optimum")
    lower_bound: int = Field(..., ge=0, description="Best proven lower bound")
    method: BinPackMethod = Field(..., description="How the count was established")
    nodes: int = Field(default=0, ge=0, description="Branch-and-bound nodes explored")
    elapsed_seconds: float = Field(default=0.0, ge=0, description="Search wall time")

    @model_validator(mode="after")
    def _bound_consistent(self) -> "BinPackResult":
        if self.lower_bound > self.bins:
            raise ValueError("lower bound exceeds bin count")
        if self.proven_optimal and self.lower_bound != self.bins:
            raise ValueError("a proven result must close the gap")
        return self
