"""Generator attribute levels, specs and audit traces."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.binpack import BinPackResult
from src.models.routing import Instance

U64_MAX = 2**64 - 1


class _AliasedEnum(str, Enum):
    """String enum that also accepts member names and listed aliases."""

    @classmethod
    def _aliases(cls) -> dict[str, str]:
        return {}

    @classmethod
    def _missing_(cls, value: object) -> Any:
        if not isinstance(value, str):
            return None
        token = value.strip()
        lowered = token.lower()
        for member in cls:
            if lowered in (member.value.lower(), member.name.lower()):
                return member
        alias = cls._aliases().get(lowered.replace("_", "").replace("-", ""))
        if alias is not None:
            return cls(alias)
        return None


class DepotPosition(_AliasedEnum):
    """Depot positioning."""

    RANDOM = "R"
    CENTRAL = "C"
    ECCENTRIC = "E"


class CustomerPosition(_AliasedEnum):
    """Customer positioning."""

    RANDOM = "R"
    CLUSTERED = "C"
    RANDOM_CLUSTERED = "RC"


class DemandDistribution(_AliasedEnum):
    """Customer demand distribution."""

    UNITARY = "U"
    D1_10 = "1-10"
    D5_10 = "5-10"
    D1_100 = "1-100"
    D50_100 = "50-100"
    QUADRANT = "Q"
    SMALL_LARGE = "SL"

    @classmethod
    def _aliases(cls) -> dict[str, str]:
        return {
            "d110": "1-10",
            "d510": "5-10",
            "d1100": "1-100",
            "d50100": "50-100",
        }


class RouteClass(_AliasedEnum):
    """Average route size class."""

    ULTRA_SHORT = "US"
    VERY_SHORT = "VS"
    SHORT = "S"
    MEDIUM = "M"
    LONG = "L"
    VERY_LONG = "VL"
    ULTRA_LONG = "UL"

    @classmethod
    def _aliases(cls) -> dict[str, str]:
        return {
            "ultrashort": "US",
            "veryshort": "VS",
            "verylong": "VL",
            "ultralong": "UL",
        }

    @property
    def interval(self) -> tuple[float, float]:
        """Closed interval the average route size r is drawn from."""
        return ROUTE_SIZE_INTERVALS[self]


ROUTE_SIZE_INTERVALS: dict[RouteClass, tuple[float, float]] = {
    RouteClass.ULTRA_SHORT: (3.0, 5.0),
    RouteClass.VERY_SHORT: (5.0, 8.0),
    RouteClass.SHORT: (8.0, 12.0),
    RouteClass.MEDIUM: (12.0, 16.0),
    RouteClass.LONG: (16.0, 25.0),
    RouteClass.VERY_LONG: (25.0, 50.0),
    RouteClass.ULTRA_LONG: (50.0, 200.0),
}

# Inclusive demand ranges of the fixed-range distributions
DEMAND_RANGES: dict[DemandDistribution, tuple[int, int]] = {
    DemandDistribution.UNITARY: (1, 1),
    DemandDistribution.D1_10: (1, 10),
    DemandDistribution.D5_10: (5, 10),
    DemandDistribution.D1_100: (1, 100),
    DemandDistribution.D50_100: (50, 100),
}

QUADRANT_EVEN_RANGE = (1, 50)
QUADRANT_ODD_RANGE = (51, 100)
SMALL_DEMAND_RANGE = (1, 10)
LARGE_DEMAND_RANGE = (50, 100)


class InstanceAttributes(BaseModel):
    """The four attribute levels that classify an instance."""

    model_config = ConfigDict(frozen=True)

    depot_pos: DepotPosition = Field(..., description="Depot positioning")
    customer_pos: CustomerPosition = Field(..., description="Customer positioning")
    demand_dist: DemandDistribution = Field(..., description="Demand distribution")
    route_class: RouteClass = Field(..., description="Average route size class")


class GenSpec(InstanceAttributes):
    """Attribute tuple plus size and seed; fully determines one instance."""

    n_total: int = Field(..., ge=11, description="Points including the depot (A)")
    master_seed: int = Field(..., ge=0, le=U64_MAX, description="64-bit master seed")

    @property
    def n_customers(self) -> int:
        """Number of customers to place."""
        return self.n_total - 1

    def attributes(self) -> InstanceAttributes:
        """Return only the attribute levels."""
        return InstanceAttributes(
            depot_pos=self.depot_pos,
            customer_pos=self.customer_pos,
            demand_dist=self.demand_dist,
            route_class=self.route_class,
        )

    def label(self) -> str:
        """Compact human-readable attribute label."""
        return (
            f"n{self.n_total} depot={self.depot_pos.value} "
            f"customers={self.customer_pos.value} demand={self.demand_dist.value} "
            f"route={self.route_class.value} seed={self.master_seed}"
        )


class GenTrace(BaseModel):
    """Audit record of the random draws behind one generated instance."""

    model_config = ConfigDict(frozen=True)

    drawn_r: float = Field(..., gt=0, description="Average route size draw, full precision")
    n_cluster_seeds: int | None = Field(
        default=None, description="Cluster seed customers, when clustering is used"
    )
    n_clustered: int = Field(
        default=0, ge=0, description="Customers placed by the cluster rule"
    )
    small_fraction: float | None = Field(
        default=None, description="Per-instance small-demand probability (SL only)"
    )
    sum_demand: int = Field(..., gt=0, description="Total customer demand")
    capacity_formula_inputs: tuple[float, int, int] = Field(
        ..., description="(r, total demand, customer count) fed to the capacity formula"
    )
    route_class: RouteClass = Field(..., description="Class r was drawn from")

    @model_validator(mode="after")
    def _r_in_class(self) -> "GenTrace":
        low, high = self.route_class.interval
        if not low <= self.drawn_r <= high:
            raise ValueError(f"drawn_r {self.drawn_r} outside [{low}, {high}]")
        return self

    def summary(self, spec: GenSpec, k_min_proven: bool) -> str:
        """One-line provenance summary carried in the instance COMMENT."""
        customers = spec.customer_pos.value
        if self.n_cluster_seeds is not None:
            customers = f"{customers}({self.n_cluster_seeds})"
        kmin = "proven" if k_min_proven else "ffd-bound"
        return (
            f"seed={spec.master_seed} r={self.drawn_r:.1f} "
            f"depot={spec.depot_pos.value} customers={customers} "
            f"demand={spec.demand_dist.value} route={spec.route_class.value} "
            f"kmin={kmin}"
        )


class GeneratedInstance(BaseModel):
    """A generated instance together with its spec, audit trace and K_min certificate."""

    model_config = ConfigDict(frozen=True)

    spec: GenSpec
    instance: Instance
    trace: GenTrace
    binpack: BinPackResult

    def sidecar(self) -> dict[str, Any]:
        """JSON-ready audit record written next to the instance file."""
        return {
            "name": self.instance.name,
            "spec": self.spec.model_dump(mode="json"),
            "trace": self.trace.model_dump(mode="json"),
            "binpack": self.binpack.model_dump(mode="json"),
        }
