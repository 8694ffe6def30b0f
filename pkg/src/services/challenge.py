"""BKS challenge: submission verification, log replay and lead-time scoring."""

from collections.abc import Mapping, Sequence
from pathlib import Path

import pandas as pd

from src.core.exceptions import UnknownInstanceError, UsageError
from src.core.logging import get_logger
from src.formats.tables import write_bks_table
from src.models.analytics import BksEntry, BksTable
from src.models.challenge import (
    ORGANIZERS,
    ChallengeConfig,
    RejectionReason,
    ScoreReport,
    ScoreRow,
    SubmissionEvent,
    Timeline,
    TimelineEntry,
    Verdict,
)
from src.models.routing import Instance
from src.services.evaluation import validate

logger = get_logger(__name__)

LEADERBOARD_FILE = "leaderboard.csv"
TOTALS_FILE = "totals.csv"
TIMELINES_FILE = "timelines.csv"
FINAL_BKS_FILE = "final_bks.csv"


def assess(instance: Instance | None, event: SubmissionEvent) -> Verdict:
    """Verify a submission independently of the current BKS.

    Replayed costs are trusted; full solutions are validated against the
    instance. The verdict is provisional: ``accepted`` only means feasible.
    """
    if event.solution is None:
        return Verdict(accepted=True, cost=event.cost)
    if instance is None:
        raise UnknownInstanceError(
            f"no instance file for {event.instance!r}",
            details={"instance": event.instance, "team": event.team},
        )
    report = validate(instance, event.solution)
    if not report.feasible:
        return Verdict(
            accepted=False,
            cost=report.recomputed_cost,
            reason=RejectionReason.INFEASIBLE,
            findings=report.violations,
        )
    return Verdict(accepted=True, cost=report.recomputed_cost)


def _against_best(verdict: Verdict, current_best: int) -> Verdict:
    if not verdict.accepted:
        return verdict
    if verdict.cost is None or verdict.cost >= current_best:
        return Verdict(
            accepted=False, cost=verdict.cost, reason=RejectionReason.NOT_IMPROVING
        )
    return verdict


def verify_submission(
    instance: Instance | None, event: SubmissionEvent, current_best: int
) -> Verdict:
    """Accept a submission iff it is feasible and strictly beats the current BKS.

    Args:
        instance: Instance the event refers to (may be None in cost-replay mode).
        event: The submission.
        current_best: Current BKS cost of the instance.

    Returns:
        Verdict with the verified cost, or the rejection reason and findings.
    """
    return _against_best(assess(instance, event), current_best)


def _check_event(event: SubmissionEvent, config: ChallengeConfig) -> None:
    if event.instance not in config.initial_bks:
        raise UnknownInstanceError(
            f"event by {event.team!r} refers to unknown instance {event.instance!r}",
            details={"instance": event.instance},
        )
    if event.time > config.horizon:
        raise UsageError(
            f"event at day {event.time} is after the {config.horizon}-day horizon",
            details={"instance": event.instance, "team": event.team},
        )


def replay(
    events: Sequence[SubmissionEvent],
    config: ChallengeConfig,
    instances: Mapping[str, Instance] | None = None,
) -> dict[str, Timeline]:
    """Replay a submission log into per-instance BKS timelines.

    Submissions are verified first (order-independent), then ordered by time
    with ties kept in input order; each one must beat the BKS standing at
    that point of the order.

    Args:
        events: Submissions in input order.
        config: Horizon, bonus and initial BKS per instance.
        instances: Instances for full-solution verification.

    Returns:
        Timeline per instance of ``config.initial_bks``.

    Raises:
        UnknownInstanceError: If an event refers to an unregistered instance.
        UsageError: If an event lies beyond the horizon.
    """
    instances = instances or {}
    for event in events:
        _check_event(event, config)
    verdicts = [assess(instances.get(event.instance), event) for event in events]

    entries: dict[str, list[TimelineEntry]] = {
        name: [TimelineEntry(time=0.0, team=ORGANIZERS, cost=cost)]
        for name, cost in config.initial_bks.items()
    }
    order = sorted(range(len(events)), key=lambda index: events[index].time)
    for index in order:
        event = events[index]
        timeline = entries[event.instance]
        verdict = _against_best(verdicts[index], timeline[-1].cost)
        if not verdict.accepted or verdict.cost is None:
            logger.info(
                "submission_rejected",
                team=event.team,
                instance=event.instance,
                time=event.time,
                reason=verdict.reason.value if verdict.reason else None,
                cost=verdict.cost,
                findings=len(verdict.findings),
            )
            continue
        timeline.append(TimelineEntry(time=event.time, team=event.team, cost=verdict.cost))
        logger.debug(
            "bks_improved",
            team=event.team,
            instance=event.instance,
            time=event.time,
            cost=verdict.cost,
        )

    return {
        name: Timeline(instance=name, entries=tuple(chain))
        for name, chain in entries.items()
    }


def score(timelines: Mapping[str, Timeline], config: ChallengeConfig) -> ScoreReport:
    """Lead-time scores: each BKS earns the days until it is beaten.

    The final holder's lead runs to the horizon and earns the bonus. The
    organizers' initial BKS earns nothing, and instances that were never
    improved contribute nothing.
    """
    lead: dict[tuple[str, str], float] = {}
    bonus: dict[tuple[str, str], float] = {}
    final_holders: dict[str, str] = {}

    for name in sorted(timelines):
        timeline = timelines[name]
        final_holders[name] = timeline.best.team
        improvements = timeline.entries[1:]
        for position, entry in enumerate(improvements):
            key = (entry.team, name)
            is_last = position == len(improvements) - 1
            until = config.horizon if is_last else improvements[position + 1].time
            lead[key] = lead.get(key, 0.0) + (until - entry.time)
            bonus.setdefault(key, 0.0)
            if is_last:
                bonus[key] += config.bonus

    rows = tuple(
        ScoreRow(team=team, instance=name, lead_days=days, bonus=bonus[(team, name)])
        for (team, name), days in lead.items()
    )
    totals: dict[str, float] = {}
    for row in rows:
        totals[row.team] = totals.get(row.team, 0.0) + row.lead_days + row.bonus
    return ScoreReport(rows=rows, totals=totals, final_holders=final_holders)


def leaderboard_frame(report: ScoreReport) -> pd.DataFrame:
    """Per-team, per-instance lead days and bonus."""
    frame = pd.DataFrame(
        [row.model_dump() for row in report.rows],
        columns=["team", "instance", "lead_days", "bonus"],
    )
    return frame.sort_values(["team", "instance"], kind="stable").reset_index(drop=True)


def totals_frame(report: ScoreReport) -> pd.DataFrame:
    """Global leaderboard: lead days, bonus and total per team, best first."""
    frame = leaderboard_frame(report)
    grouped = (
        frame.groupby("team", as_index=False)[["lead_days", "bonus"]].sum()
        if not frame.empty
        else pd.DataFrame(columns=["team", "lead_days", "bonus"])
    )
    grouped["total"] = grouped["lead_days"] + grouped["bonus"]
    return grouped.sort_values(["total", "team"], ascending=[False, True]).reset_index(
        drop=True
    )


def timelines_frame(timelines: Mapping[str, Timeline]) -> pd.DataFrame:
    """Chronological BKS evolution of every instance."""
    rows = [
        {
            "instance": name,
            "position": position,
            "time": entry.time,
            "team": entry.team,
            "cost": entry.cost,
        }
        for name in sorted(timelines)
        for position, entry in enumerate(timelines[name].entries)
    ]
    return pd.DataFrame(rows, columns=["instance", "position", "time", "team", "cost"])


def final_bks(timelines: Mapping[str, Timeline]) -> BksTable:
    """BKS table at the end of the challenge; the method is the holding team."""
    return BksTable(
        entries={
            name: BksEntry(cost=timeline.best.cost, method=timeline.best.team)
            for name, timeline in timelines.items()
        }
    )


def write_reports(
    report: ScoreReport, timelines: Mapping[str, Timeline], out_dir: Path
) -> list[Path]:
    """Write leaderboard, totals, timelines and final BKS CSVs into ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for filename, frame in (
        (LEADERBOARD_FILE, leaderboard_frame(report)),
        (TOTALS_FILE, totals_frame(report)),
        (TIMELINES_FILE, timelines_frame(timelines)),
    ):
        path = out_dir / filename
        frame.to_csv(path, index=False)
        written.append(path)
    write_bks_table(final_bks(timelines), out_dir / FINAL_BKS_FILE)
    written.append(out_dir / FINAL_BKS_FILE)
    logger.info("score_reports_written", out_dir=str(out_dir), teams=len(report.totals))
    return written
