"""CSV tables exchanged between subcommands: BKS, runs, attribute manifests, index."""

from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import ValidationError

from src.core.exceptions import FormatError, FormatErrorKind
from src.models.analytics import BksEntry, BksTable, RunRecord
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GeneratedInstance,
    InstanceAttributes,
    RouteClass,
)

DEFAULT_METHOD = "baseline"

RUN_COLUMNS = ["instance", "method", "seed", "cost"]
INDEX_COLUMNS = [
    "name",
    "n_total",
    "depot",
    "customers",
    "demand",
    "route_class",
    "seed",
    "drawn_r",
    "capacity",
    "k_min",
    "proven",
    "kmin_method",
]
ATTRIBUTE_COLUMNS = ["name", "depot", "customers", "demand", "route_class"]


def read_frame(path: Path) -> pd.DataFrame:
    """Read a CSV as strings with empty cells kept as empty strings.

    Raises:
        FormatError: If the file is empty or not parseable as CSV.
    """
    try:
        frame = pd.read_csv(
            path, dtype=str, keep_default_na=False, skipinitialspace=True, comment="#"
        )
    except pd.errors.EmptyDataError:
        raise FormatError(
            f"{path} is empty", line=1, kind=FormatErrorKind.MISSING_COLUMN
        ) from None
    except pd.errors.ParserError as exc:
        raise FormatError(f"{path}: {exc}", line=0) from None
    frame.columns = [str(column).strip().lower() for column in frame.columns]
    return frame


def _column(frame: pd.DataFrame, path: Path, *names: str) -> str:
    for name in names:
        if name in frame.columns:
            return name
    raise FormatError(
        f"{path} lacks a {' / '.join(names)} column",
        line=1,
        kind=FormatErrorKind.MISSING_COLUMN,
    )


def _int_cell(value: str, line: int, what: str) -> int:
    try:
        return int(str(value).replace(",", "").strip())
    except ValueError:
        raise FormatError(
            f"{what} {value!r} is not an integer",
            line=line,
            kind=FormatErrorKind.NON_INTEGER_TOKEN,
        ) from None


def read_bks_table(path: Path) -> BksTable:
    """Load a BKS CSV (``instance``/``name``, ``cost``/``bks``, optional ``method``)."""
    frame = read_frame(path)
    name_col = _column(frame, path, "instance", "name")
    cost_col = _column(frame, path, "cost", "bks")
    has_method = "method" in frame.columns

    entries: dict[str, BksEntry] = {}
    for offset, record in enumerate(frame.to_dict("records")):
        line = offset + 2
        cost = _int_cell(record[cost_col], line, "BKS cost")
        if cost <= 0:
            raise FormatError(
                f"BKS cost {cost} must be positive",
                line=line,
                kind=FormatErrorKind.INVALID_VALUE,
            )
        entries[str(record[name_col]).strip()] = BksEntry(
            cost=cost, method=str(record["method"]) if has_method else ""
        )
    return BksTable(entries=entries)


def write_bks_table(table: BksTable, path: Path) -> None:
    """Write a BKS table as ``instance,cost,method``."""
    frame = pd.DataFrame(
        [
            {"instance": name, "cost": entry.cost, "method": entry.method}
            for name, entry in sorted(table.entries.items())
        ],
        columns=["instance", "cost", "method"],
    )
    frame.to_csv(path, index=False)


def read_runs(path: Path) -> list[RunRecord]:
    """Load run records; an empty cost cell marks a run without a feasible solution.

    Extra columns (elapsed, iterations, ...) are ignored.
    """
    frame = read_frame(path)
    name_col = _column(frame, path, "instance", "name")
    seed_col = _column(frame, path, "seed")
    cost_col = _column(frame, path, "cost")
    has_method = "method" in frame.columns

    records: list[RunRecord] = []
    for offset, record in enumerate(frame.to_dict("records")):
        line = offset + 2
        raw_cost = str(record[cost_col]).strip()
        try:
            records.append(
                RunRecord(
                    instance=str(record[name_col]).strip(),
                    method=(str(record["method"]).strip() if has_method else "")
                    or DEFAULT_METHOD,
                    seed=_int_cell(record[seed_col], line, "seed"),
                    cost=_int_cell(raw_cost, line, "cost") if raw_cost else None,
                )
            )
        except ValidationError as exc:
            raise FormatError(
                f"invalid run record: {exc.errors()[0]['msg']}",
                line=line,
                kind=FormatErrorKind.INVALID_VALUE,
            ) from None
    return records


def write_runs(rows: Iterable[Mapping[str, Any]], path: Path) -> None:
    """Write run rows; ``instance, method, seed, cost`` first, extras after."""
    frame = pd.DataFrame(list(rows))
    if frame.empty:
        frame = pd.DataFrame(columns=RUN_COLUMNS)
    extras = [column for column in frame.columns if column not in RUN_COLUMNS]
    frame = frame.reindex(columns=RUN_COLUMNS + extras)
    frame["cost"] = pd.array(frame["cost"].tolist(), dtype="Int64")
    frame.to_csv(path, index=False)


def read_attribute_manifest(path: Path) -> dict[str, InstanceAttributes]:
    """Map instance name to attribute levels from an index or reference CSV."""
    frame = read_frame(path)
    for column in ATTRIBUTE_COLUMNS:
        _column(frame, path, column)

    attributes: dict[str, InstanceAttributes] = {}
    for offset, record in enumerate(frame.to_dict("records")):
        try:
            attributes[str(record["name"]).strip()] = InstanceAttributes(
                depot_pos=DepotPosition(record["depot"]),
                customer_pos=CustomerPosition(record["customers"]),
                demand_dist=DemandDistribution(record["demand"]),
                route_class=RouteClass(record["route_class"]),
            )
        except ValueError as exc:
            raise FormatError(
                f"invalid attribute level: {exc}",
                line=offset + 2,
                kind=FormatErrorKind.INVALID_VALUE,
            ) from None
    return attributes


def index_row(generated: GeneratedInstance) -> dict[str, Any]:
    """One ``index.csv`` row describing a generated instance."""
    spec, instance = generated.spec, generated.instance
    return {
        "name": instance.name,
        "n_total": spec.n_total,
        "depot": spec.depot_pos.value,
        "customers": spec.customer_pos.value,
        "demand": spec.demand_dist.value,
        "route_class": spec.route_class.value,
        "seed": spec.master_seed,
        "drawn_r": generated.trace.drawn_r,
        "capacity": instance.capacity,
        "k_min": instance.k_min,
        "proven": instance.k_min_proven,
        "kmin_method": generated.binpack.method.value,
    }


def write_index(rows: Iterable[Mapping[str, Any]], path: Path) -> None:
    """Write the generation index; it doubles as an attribute manifest."""
    frame = pd.DataFrame(list(rows), columns=INDEX_COLUMNS)
    frame.to_csv(path, index=False)
