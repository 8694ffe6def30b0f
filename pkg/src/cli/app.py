"""Argument parser assembling the subcommands."""

import argparse

from src.cli.commands import COMMANDS
from src.config.settings import get_settings
from src.core.logging import LOG_FORMATS, LOG_LEVELS


def build_parser() -> argparse.ArgumentParser:
    """Build the ``xlbench`` parser with every subcommand registered."""
    defaults = get_settings()
    parser = argparse.ArgumentParser(
        prog="xlbench",
        description="Large-scale CVRP benchmark toolkit.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {defaults.app_version}"
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=defaults.log_level,
        help="log threshold (logs go to stderr)",
    )
    parser.add_argument(
        "--log-format",
        choices=LOG_FORMATS,
        default=defaults.log_format,
        help="structured log rendering",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser
