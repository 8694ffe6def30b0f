"""Command-line entry point."""

import argparse
import sys
from collections.abc import Sequence

from src.cli.app import build_parser
from src.core.exceptions import EXIT_USAGE, handle_exception
from src.core.logging import (
    bind_run_context,
    clear_run_context,
    get_logger,
    log_duration,
    new_run_id,
    setup_logging,
)

logger = get_logger(__name__)


def _dispatch(args: argparse.Namespace) -> int:
    try:
        return int(args.handler(args))
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return handle_exception(exc)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and return its exit code.

    Exit codes: 0 success, 1 domain failure (infeasible solution, unproven
    K_min), 2 usage, IO or format error.
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    setup_logging(log_level=args.log_level, log_format=args.log_format)
    bind_run_context(run_id=new_run_id(), command=args.command)

    try:
        with log_duration(logger, "command_completed") as outcome:
            outcome["exit_code"] = _dispatch(args)
    finally:
        clear_run_context()
    return int(outcome["exit_code"])


if __name__ == "__main__":
    sys.exit(main())
