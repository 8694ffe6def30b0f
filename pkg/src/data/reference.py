"""Loaders for the bundled reference manifest and BKS table."""

from functools import lru_cache
from importlib import resources

from pydantic import BaseModel, ConfigDict, Field

from src.formats.manifest import parse_manifest
from src.formats.tables import read_frame
from src.models.analytics import BksEntry, BksTable
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GenSpec,
    InstanceAttributes,
    RouteClass,
)

REFERENCE_TABLE = "xl_reference.csv"
REFERENCE_MANIFEST = "xl.manifest"


class ReferenceRow(BaseModel):
    """One published instance: attributes, capacity, displayed r and initial BKS."""

    model_config = ConfigDict(frozen=True)

    name: str
    attributes: InstanceAttributes
    cluster_seeds: int | None = Field(default=None, ge=2, le=6)
    capacity: int = Field(..., gt=0)
    r: float = Field(..., gt=0, description="Average route size as published (one decimal)")
    bks: int = Field(..., gt=0)
    method: str = ""


@lru_cache
def load_reference_rows() -> tuple[ReferenceRow, ...]:
    """Read the 100 published rows in table order."""
    with resources.as_file(resources.files(__package__) / REFERENCE_TABLE) as path:
        frame = read_frame(path)
    rows = []
    for record in frame.to_dict("records"):
        seeds = str(record["seeds"]).strip()
        rows.append(
            ReferenceRow(
                name=record["name"],
                attributes=InstanceAttributes(
                    depot_pos=DepotPosition(record["depot"]),
                    customer_pos=CustomerPosition(record["customers"]),
                    demand_dist=DemandDistribution(record["demand"]),
                    route_class=RouteClass(record["route_class"]),
                ),
                cluster_seeds=int(seeds) if seeds else None,
                capacity=int(record["capacity"]),
                r=float(record["r"]),
                bks=int(record["bks"]),
                method=record["method"],
            )
        )
    return tuple(rows)


def reference_manifest() -> list[GenSpec]:
    """Generator specs reproducing the published attribute combinations."""
    text = (resources.files(__package__) / REFERENCE_MANIFEST).read_text(encoding="utf-8")
    return parse_manifest(text)


def reference_bks() -> BksTable:
    """Initial BKS table of the published instances."""
    entries = {
        row.name: BksEntry(cost=row.bks, method=row.method)
        for row in load_reference_rows()
    }
    return BksTable(entries=entries)


def reference_attributes() -> dict[str, InstanceAttributes]:
    """Attribute manifest of the published instances, keyed by name."""
    return {row.name: row.attributes for row in load_reference_rows()}
