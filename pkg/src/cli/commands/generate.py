"""``xlbench generate``: instance files, trace sidecars and an index."""

import argparse
import json
from pathlib import Path

from pydantic import ValidationError

from src.cli.common import (
    build_settings,
    ensure_out_dir,
    positive_float,
    read_input,
    u64,
)
from src.core.exceptions import EXIT_DOMAIN_FAILURE, EXIT_OK, UsageError
from src.core.logging import get_logger
from src.data import reference_manifest
from src.formats.instance_file import write_instance
from src.formats.manifest import format_manifest, parse_manifest
from src.formats.tables import index_row, write_index
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GenSpec,
    RouteClass,
)
from src.services.generator import InstanceGenerator

logger = get_logger(__name__)

INDEX_FILE = "index.csv"
MANIFEST_FILE = "manifest.txt"
TRACE_SUFFIX = ".trace.json"


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser(
        "generate",
        help="generate instances from a manifest or an inline spec",
        description=(
            "Write one .vrp file and one trace sidecar per spec, plus index.csv and "
            "a manifest.txt that regenerates the batch. "
            "Exits 1 when any K_min could not be proven optimal."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--manifest", type=Path, help="manifest file, one spec per line")
    source.add_argument(
        "--reference", action="store_true", help="the 100 bundled reference shapes"
    )
    source.add_argument("--n-total", type=int, help="inline spec: points incl. depot")
    parser.add_argument("--depot", default="R", help="inline spec: R, C or E")
    parser.add_argument("--customers", default="R", help="inline spec: R, C or RC")
    parser.add_argument("--demand", default="U", help="inline spec: demand distribution")
    parser.add_argument("--route-class", default="M", help="inline spec: US .. UL")
    parser.add_argument("--seed", type=u64, help="inline spec: master seed (default 0)")
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.add_argument(
        "--binpack-time", type=positive_float, help="K_min search budget, seconds"
    )
    parser.set_defaults(handler=run)


def _inline_spec(args: argparse.Namespace) -> GenSpec:
    try:
        return GenSpec(
            n_total=args.n_total,
            depot_pos=DepotPosition(args.depot),
            customer_pos=CustomerPosition(args.customers),
            demand_dist=DemandDistribution(args.demand),
            route_class=RouteClass(args.route_class),
            master_seed=args.seed or 0,
        )
    except (ValueError, ValidationError) as exc:
        raise UsageError(f"invalid inline spec: {exc}") from None


def _specs(args: argparse.Namespace) -> list[GenSpec]:
    if args.n_total is not None:
        return [_inline_spec(args)]
    if args.seed is not None:
        raise UsageError("--seed applies to inline specs; manifest rows carry their seeds")
    if args.reference:
        return reference_manifest()
    return parse_manifest(read_input(args.manifest).decode("utf-8"))


def run(args: argparse.Namespace) -> int:
    """Generate every spec; exit 1 if any K_min is only an upper bound."""
    settings = build_settings(binpack_time_limit=args.binpack_time)
    specs = _specs(args)
    out_dir = ensure_out_dir(args.out)
    generator = InstanceGenerator(settings)

    rows = []
    written: dict[str, str] = {}
    unproven: list[str] = []
    for spec in specs:
        generated = generator.generate_instance(spec)
        name = generated.instance.name
        if name in written:
            raise UsageError(
                f"specs {written[name]!r} and {spec.label()!r} both produce {name}",
                details={"name": name},
            )
        written[name] = spec.label()

        (out_dir / f"{name}.vrp").write_bytes(write_instance(generated.instance))
        sidecar = json.dumps(generated.sidecar(), indent=2, sort_keys=True) + "\n"
        (out_dir / f"{name}{TRACE_SUFFIX}").write_text(sidecar, encoding="utf-8")
        rows.append(index_row(generated))

        proven = generated.instance.k_min_proven
        if not proven:
            unproven.append(name)
        print(f"{name} k_min={generated.instance.k_min} {'proven' if proven else 'UNPROVEN'}")

    write_index(rows, out_dir / INDEX_FILE)
    (out_dir / MANIFEST_FILE).write_text(format_manifest(specs), encoding="utf-8")
    logger.info(
        "generation_finished",
        out_dir=str(out_dir),
        instances=len(rows),
        unproven=len(unproven),
    )
    if unproven:
        for name in unproven:
            print(f"UNPROVEN {name}")
        return EXIT_DOMAIN_FAILURE
    return EXIT_OK
