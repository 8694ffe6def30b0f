"""Generator manifests: one ``n_total, depot, customers, demand, route_class, seed`` per line."""

from pydantic import ValidationError

from src.core.exceptions import FormatErrorKind, ManifestError
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GenSpec,
    RouteClass,
)

MANIFEST_FIELDS = ("n_total", "depot", "customers", "demand", "route_class", "seed")
MANIFEST_HEADER = "# " + ", ".join(MANIFEST_FIELDS)


def parse_manifest(text: str) -> list[GenSpec]:
    """Parse manifest text into generation specs.

    Blank lines and ``#`` comments are skipped; a first row starting with
    ``n_total`` is treated as a column header.

    Raises:
        ManifestError: With the line number of the first bad row.
    """
    specs: list[GenSpec] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [token.strip() for token in line.split(",")]
        if not specs and fields[0].lower() == "n_total":
            continue
        if len(fields) != len(MANIFEST_FIELDS):
            raise ManifestError(
                f"expected {len(MANIFEST_FIELDS)} fields ({', '.join(MANIFEST_FIELDS)}), "
                f"got {len(fields)}",
                line=number,
                kind=FormatErrorKind.MALFORMED_LINE,
            )
        specs.append(_spec_from_fields(fields, number))
    return specs


def _spec_from_fields(fields: list[str], line: int) -> GenSpec:
    n_total, depot, customers, demand, route_class, seed = fields
    try:
        n, master_seed = int(n_total), int(seed)
    except ValueError:
        raise ManifestError(
            "n_total and seed must be integers",
            line=line,
            kind=FormatErrorKind.NON_INTEGER_TOKEN,
        ) from None
    try:
        return GenSpec(
            n_total=n,
            depot_pos=DepotPosition(depot),
            customer_pos=CustomerPosition(customers),
            demand_dist=DemandDistribution(demand),
            route_class=RouteClass(route_class),
            master_seed=master_seed,
        )
    except (ValueError, ValidationError) as exc:
        raise ManifestError(
            f"invalid spec: {exc}", line=line, kind=FormatErrorKind.INVALID_VALUE
        ) from None


def format_manifest(specs: list[GenSpec]) -> str:
    """Render specs as manifest text with a commented header."""
    rows = [MANIFEST_HEADER]
    for spec in specs:
        rows.append(
            f"{spec.n_total}, {spec.depot_pos.value}, {spec.customer_pos.value}, "
            f"{spec.demand_dist.value}, {spec.route_class.value}, {spec.master_seed}"
        )
    return "\n".join(rows) + "\n"
