"""Gap-to-BKS analytics over multi-seed run records."""

from collections.abc import Iterable, Mapping
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache

import pandas as pd

from src.config.settings import Settings, get_settings
from src.core.exceptions import MissingBksError, UnknownInstanceError
from src.core.logging import get_logger
from src.models.analytics import (
    AttributeCell,
    BksTable,
    GroupAverage,
    InstanceSummary,
    RunRecord,
    SummaryReport,
)
from src.models.generation import InstanceAttributes
from src.models.routing import parse_instance_name

logger = get_logger(__name__)

ALL_GROUP = "all"
OVERALL = "overall"
ATTRIBUTE_FIELDS = {
    "depot": "depot_pos",
    "customers": "customer_pos",
    "demand": "demand_dist",
    "route_class": "route_class",
}


def gap_percent(cost: float, bks: float) -> float:
    """Relative gap 100 * (cost - bks) / bks; negative means a new BKS.

    Raises:
        ValueError: If bks is not positive.
    """
    if bks <= 0:
        raise ValueError(f"BKS must be positive, got {bks}")
    return 100.0 * (cost - bks) / bks


def round_half_up(value: float | None, decimals: int) -> float | None:
    """Round half away from zero on the decimal representation."""
    if value is None or pd.isna(value):
        return None
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def _customers_in(name: str) -> int | None:
    try:
        return parse_instance_name(name)[1] - 1
    except ValueError:
        return None


def _mean(values: Iterable[float | None]) -> float | None:
    present = [value for value in values if value is not None and pd.notna(value)]
    return sum(present) / len(present) if present else None


class AnalyticsService:
    """Summaries and attribute tables of run records against a BKS table."""

    def __init__(self, settings: Settings) -> None:
        """Initialize the service.

        Args:
            settings: Toolkit settings (report precision).
        """
        self.decimals = settings.report_decimals

    def _round(self, value: float | None) -> float | None:
        return round_half_up(value, self.decimals)

    def _per_instance(self, records: list[RunRecord], bks: BksTable) -> pd.DataFrame:
        """Unrounded best/mean/gaps keyed by (instance, method), sorted."""
        for record in records:
            if record.instance not in bks:
                raise MissingBksError(
                    f"no BKS entry for instance {record.instance!r}",
                    details={"instance": record.instance},
                )
        columns = ["instance", "method", "cost"]
        frame = pd.DataFrame(
            [(r.instance, r.method, r.cost) for r in records], columns=columns
        )
        frame["cost"] = pd.to_numeric(frame["cost"], errors="coerce")
        grouped = (
            frame.groupby(["instance", "method"], sort=True)["cost"]
            .agg(runs="size", feasible_runs="count", best="min", mean="mean")
            .reset_index()
        )
        grouped["bks"] = [bks.cost(name) for name in grouped["instance"]]
        grouped["gap_best"] = [
            gap_percent(best, ref) if pd.notna(best) else None
            for best, ref in zip(grouped["best"], grouped["bks"], strict=True)
        ]
        grouped["gap_mean"] = [
            gap_percent(mean, ref) if pd.notna(mean) else None
            for mean, ref in zip(grouped["mean"], grouped["bks"], strict=True)
        ]
        return grouped

    def summarize(
        self,
        records: Iterable[RunRecord],
        bks: BksTable,
        split: int | None = None,
    ) -> SummaryReport:
        """Best and mean over seeds per (instance, method), with dataset averages.

        Runs without a feasible solution count towards ``runs`` only.
        Averages are unweighted over instances; ``split`` adds groups of
        instances with fewer / at least that many customers.

        Raises:
            MissingBksError: If a record's instance has no BKS entry.
        """
        frame = self._per_instance(list(records), bks)

        summaries = []
        for row in frame.to_dict("records"):
            best = row["best"]
            summaries.append(
                InstanceSummary(
                    instance=row["instance"],
                    method=row["method"],
                    n_customers=_customers_in(row["instance"]),
                    runs=int(row["runs"]),
                    feasible_runs=int(row["feasible_runs"]),
                    bks=int(row["bks"]),
                    best=int(best) if pd.notna(best) else None,
                    mean=self._round(row["mean"]),
                    gap_best=self._round(row["gap_best"]),
                    gap_mean=self._round(row["gap_mean"]),
                )
            )

        frame["n_customers"] = [_customers_in(name) for name in frame["instance"]]
        groups: list[GroupAverage] = []
        for method, part in frame.groupby("method", sort=True):
            buckets = [(ALL_GROUP, part)]
            if split is not None:
                sized = part[part["n_customers"].notna()]
                buckets.append((f"< {split}", sized[sized["n_customers"] < split]))
                buckets.append((f">= {split}", sized[sized["n_customers"] >= split]))
            for label, members in buckets:
                groups.append(
                    GroupAverage(
                        group=label,
                        method=str(method),
                        instances=len(members),
                        avg_gap_best=self._round(_mean(members["gap_best"])),
                        avg_gap_mean=self._round(_mean(members["gap_mean"])),
                    )
                )

        logger.debug(
            "runs_summarized", instances=len(summaries), groups=len(groups), split=split
        )
        return SummaryReport(instances=tuple(summaries), groups=tuple(groups))

    def group_by_attribute(
        self,
        records: Iterable[RunRecord],
        bks: BksTable,
        manifest: Mapping[str, InstanceAttributes],
    ) -> list[AttributeCell]:
        """Average gaps per attribute level and method, plus an overall row.

        Raises:
            MissingBksError: If a record's instance has no BKS entry.
            UnknownInstanceError: If an instance is absent from the manifest.
        """
        frame = self._per_instance(list(records), bks)
        for name in frame["instance"].unique():
            if name not in manifest:
                raise UnknownInstanceError(
                    f"instance {name!r} is not in the attribute manifest",
                    details={"instance": name},
                )
        for column, field in ATTRIBUTE_FIELDS.items():
            frame[column] = [getattr(manifest[name], field) for name in frame["instance"]]

        cells: list[AttributeCell] = []
        for column, field in ATTRIBUTE_FIELDS.items():
            levels = type(getattr(next(iter(manifest.values())), field)) if manifest else []
            for level in levels:
                for method, part in frame.groupby("method", sort=True):
                    members = part[part[column] == level]
                    if members.empty:
                        continue
                    cells.append(self._cell(column, level.value, str(method), members))
        for method, part in frame.groupby("method", sort=True):
            cells.append(self._cell(OVERALL, ALL_GROUP, str(method), part))
        return cells

    def _cell(
        self, attribute: str, level: str, method: str, members: pd.DataFrame
    ) -> AttributeCell:
        return AttributeCell(
            attribute=attribute,
            level=level,
            method=method,
            instances=len(members),
            avg_gap_best=self._round(_mean(members["gap_best"])),
            avg_gap_mean=self._round(_mean(members["gap_mean"])),
        )


def summary_frame(report: SummaryReport) -> pd.DataFrame:
    """Per-instance summary table; integer columns stay integers when empty."""
    frame = pd.DataFrame(
        [summary.model_dump() for summary in report.instances],
        columns=list(InstanceSummary.model_fields),
    )
    return frame.astype({"n_customers": "Int64", "best": "Int64"})


def groups_frame(report: SummaryReport) -> pd.DataFrame:
    """Dataset-level averages table."""
    return pd.DataFrame(
        [group.model_dump() for group in report.groups],
        columns=list(GroupAverage.model_fields),
    )


def attribute_frame(cells: Iterable[AttributeCell]) -> pd.DataFrame:
    """Attribute-level averages table, one row per (attribute, level, method)."""
    return pd.DataFrame(
        [cell.model_dump() for cell in cells], columns=list(AttributeCell.model_fields)
    )


def render_table(frame: pd.DataFrame) -> str:
    """Aligned plain-text rendering; missing values print as '-'."""
    if frame.empty:
        return "(no rows)"
    return frame.astype(object).where(frame.notna(), "-").to_string(index=False)


@lru_cache
def get_analytics_service() -> AnalyticsService:
    """Get a singleton AnalyticsService built from the default settings."""
    return AnalyticsService(get_settings())
