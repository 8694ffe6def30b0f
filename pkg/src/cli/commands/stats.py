"""``xlbench stats``: gap-to-BKS summaries of a runs CSV."""

import argparse
from pathlib import Path

from src.cli.common import (
    REFERENCE,
    build_settings,
    ensure_out_dir,
    load_attributes,
    load_bks,
    positive_int,
    read_input,
)
from src.core.exceptions import EXIT_OK
from src.core.logging import get_logger
from src.formats.tables import read_runs
from src.services.analytics import (
    AnalyticsService,
    attribute_frame,
    groups_frame,
    render_table,
    summary_frame,
)

logger = get_logger(__name__)

SUMMARY_FILE = "summary.csv"
GROUPS_FILE = "groups.csv"
ATTRIBUTES_FILE = "attributes.csv"


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser(
        "stats",
        help="summarize runs against best known solutions",
        description=(
            "Best and mean cost over seeds, gaps to BKS and dataset averages; "
            "with --manifest also average gaps per attribute level."
        ),
    )
    parser.add_argument("runs", type=Path, help="runs CSV (instance, method, seed, cost)")
    parser.add_argument(
        "--bks",
        default=REFERENCE,
        help="BKS CSV, or 'reference' for the bundled table",
    )
    parser.add_argument(
        "--manifest",
        help="attribute CSV (e.g. a generation index.csv), or 'reference'",
    )
    parser.add_argument(
        "--split", type=positive_int, help="customer-count threshold for group rows"
    )
    parser.add_argument("--decimals", type=int, help="report precision")
    parser.add_argument("--out", type=Path, help="directory for CSV reports")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    service = AnalyticsService(build_settings(report_decimals=args.decimals))
    read_input(args.runs)
    records = read_runs(args.runs)
    bks = load_bks(args.bks)

    report = service.summarize(records, bks, split=args.split)
    frames = {
        SUMMARY_FILE: summary_frame(report),
        GROUPS_FILE: groups_frame(report),
    }
    if args.manifest is not None:
        cells = service.group_by_attribute(records, bks, load_attributes(args.manifest))
        frames[ATTRIBUTES_FILE] = attribute_frame(cells)

    blocks = [render_table(frame) for frame in frames.values()]
    print("\n\n".join(blocks))

    if args.out is not None:
        out_dir = ensure_out_dir(args.out)
        for filename, frame in frames.items():
            frame.to_csv(out_dir / filename, index=False)

    logger.info(
        "stats_reported",
        records=len(records),
        instances=len(report.instances),
        attribute_table=args.manifest is not None,
    )
    return EXIT_OK
