"""``xlbench score``: replay a challenge event log into leaderboards."""

import argparse
from pathlib import Path

from pydantic import ValidationError

from src.cli.common import (
    REFERENCE,
    build_settings,
    ensure_out_dir,
    load_bks,
    load_instance,
    read_input,
)
from src.core.exceptions import EXIT_OK, FormatError, FormatErrorKind, UsageError
from src.core.logging import get_logger
from src.formats.event_log import EventLogLine, parse_event_log
from src.formats.solution_file import parse_solution
from src.models.challenge import ChallengeConfig, SubmissionEvent
from src.models.routing import Instance
from src.services.analytics import render_table
from src.services.challenge import replay, score, totals_frame, write_reports

logger = get_logger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser(
        "score",
        help="score a BKS challenge event log",
        description=(
            "Each line is 'time, team, instance, cost-or-solution-path'. "
            "Writes leaderboard.csv, totals.csv, timelines.csv and final_bks.csv."
        ),
    )
    parser.add_argument("log", type=Path, help="event log")
    parser.add_argument(
        "--bks",
        default=REFERENCE,
        help="initial BKS CSV, or 'reference' for the bundled table",
    )
    parser.add_argument("--horizon", type=float, help="challenge length, days")
    parser.add_argument("--bonus", type=float, help="final holder bonus, days")
    parser.add_argument(
        "--instances", type=Path, help="directory of <name>.vrp files for verification"
    )
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.set_defaults(handler=run)


def _instances_for(lines: list[EventLogLine], directory: Path | None) -> dict[str, Instance]:
    wanted = sorted({line.instance for line in lines if line.solution_path is not None})
    if not wanted:
        return {}
    if directory is None:
        raise UsageError("solution-path events need --instances DIR to verify against")
    instances = {}
    for name in wanted:
        path = directory / f"{name}.vrp"
        if path.is_file():
            instances[name] = load_instance(path)
    return instances


def _events(lines: list[EventLogLine]) -> list[SubmissionEvent]:
    events = []
    for line in lines:
        solution = None
        if line.solution_path is not None:
            solution = parse_solution(read_input(line.solution_path))
        try:
            events.append(
                SubmissionEvent(
                    team=line.team,
                    instance=line.instance,
                    time=line.time,
                    cost=line.cost,
                    solution=solution,
                )
            )
        except ValidationError as exc:
            raise FormatError(
                f"invalid event: {exc.errors()[0]['msg']}",
                line=line.line,
                kind=FormatErrorKind.INVALID_VALUE,
            ) from None
    return events


def run(args: argparse.Namespace) -> int:
    settings = build_settings(challenge_horizon=args.horizon, challenge_bonus=args.bonus)
    bks = load_bks(args.bks)
    lines = parse_event_log(read_input(args.log).decode("utf-8"), base_dir=args.log.parent)
    events = _events(lines)
    config = ChallengeConfig(
        horizon=settings.challenge_horizon,
        bonus=settings.challenge_bonus,
        initial_bks=bks.costs(),
    )

    timelines = replay(events, config, _instances_for(lines, args.instances))
    report = score(timelines, config)
    write_reports(report, timelines, ensure_out_dir(args.out))
    print(render_table(totals_frame(report)))

    logger.info(
        "challenge_scored",
        events=len(events),
        teams=len(report.totals),
        improved=sum(timeline.improved for timeline in timelines.values()),
    )
    return EXIT_OK
