"""Run records, BKS tables and aggregated summaries."""

from pydantic import BaseModel, ConfigDict, Field

from src.models.generation import U64_MAX


class RunRecord(BaseModel):
    """Final cost of one seeded run; ``cost`` is None when no feasible solution."""

    model_config = ConfigDict(frozen=True)

    instance: str = Field(..., min_length=1)
    method: str = Field(..., min_length=1)
    seed: int = Field(..., ge=0, le=U64_MAX)
    cost: int | None = Field(default=None, gt=0)


class BksEntry(BaseModel):
    """Best known solution value and the method that found it."""

    model_config = ConfigDict(frozen=True)

    cost: int = Field(..., gt=0)
    method: str = Field(default="")


class BksTable(BaseModel):
    """Best known solutions keyed by instance name."""

    model_config = ConfigDict(frozen=True)

    entries: dict[str, BksEntry] = Field(default_factory=dict)

    def __contains__(self, instance: object) -> bool:
        return instance in self.entries

    def cost(self, instance: str) -> int:
        """BKS cost of an instance (KeyError when absent)."""
        return self.entries[instance].cost

    def costs(self) -> dict[str, int]:
        """Plain mapping instance -> cost."""
        return {name: entry.cost for name, entry in self.entries.items()}


class InstanceSummary(BaseModel):
    """Best/mean over seeds of one method on one instance."""

    model_config = ConfigDict(frozen=True)

    instance: str
    method: str
    n_customers: int | None = Field(
        default=None, ge=1, description="A - 1, when the name carries it"
    )
    runs: int = Field(..., ge=0)
    feasible_runs: int = Field(..., ge=0)
    bks: int = Field(..., gt=0)
    best: int | None = None
    mean: float | None = None
    gap_best: float | None = None
    gap_mean: float | None = None


class GroupAverage(BaseModel):
    """Unweighted average gaps of one method over a group of instances."""

    model_config = ConfigDict(frozen=True)

    group: str
    method: str
    instances: int = Field(..., ge=0)
    avg_gap_best: float | None = None
    avg_gap_mean: float | None = None


class AttributeCell(BaseModel):
    """Average gaps of one method over the instances sharing an attribute level."""

    model_config = ConfigDict(frozen=True)

    attribute: str
    level: str
    method: str
    instances: int = Field(..., ge=0)
    avg_gap_best: float | None = None
    avg_gap_mean: float | None = None


class SummaryReport(BaseModel):
    """Per-instance summaries plus dataset-level group averages."""

    model_config = ConfigDict(frozen=True)

    instances: tuple[InstanceSummary, ...] = Field(default_factory=tuple)
    groups: tuple[GroupAverage, ...] = Field(default_factory=tuple)
