"""BKS challenge models: submissions, configuration, timelines and scores."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.routing import Finding, Solution

ORGANIZERS = "ORGANIZERS"


class SubmissionEvent(BaseModel):
    """A team's submission for one instance at a point in challenge time.

    Exactly one of ``solution`` (full verification) or ``cost`` (replay of a
    pre-verified value) is set.
    """

    model_config = ConfigDict(frozen=True)

    team: str = Field(..., min_length=1, description="Submitting team")
    instance: str = Field(..., min_length=1, description="Instance name")
    time: float = Field(..., ge=0, description="Days since challenge start")
    solution: Solution | None = Field(default=None, description="Submitted routes")
    cost: int | None = Field(default=None, gt=0, description="Pre-verified cost")

    @model_validator(mode="after")
    def _one_payload(self) -> "SubmissionEvent":
        if (self.solution is None) == (self.cost is None):
            raise ValueError("exactly one of solution or cost must be given")
        if self.team == ORGANIZERS:
            raise ValueError(f"team name {ORGANIZERS!r} is reserved")
        return self


class ChallengeConfig(BaseModel):
    """Challenge horizon, final-holder bonus and starting BKS per instance."""

    model_config = ConfigDict(frozen=True)

    horizon: float = Field(default=30.0, gt=0, description="Challenge length in days")
    bonus: float = Field(default=5.0, ge=0, description="Final BKS holder bonus days")
    initial_bks: dict[str, int] = Field(
        default_factory=dict, description="Initial BKS cost per instance"
    )


class RejectionReason(str, Enum):
    """Why a submission did not enter the timeline."""

    INFEASIBLE = "infeasible"
    NOT_IMPROVING = "not_improving"


class Verdict(BaseModel):
    """Verification outcome of one submission."""

    model_config = ConfigDict(frozen=True)

    accepted: bool = Field(..., description="Submission improves the current BKS")
    cost: int | None = Field(default=None, description="Verified or replayed cost")
    reason: RejectionReason | None = Field(default=None, description="Rejection reason")
    findings: tuple[Finding, ...] = Field(default_factory=tuple)


class TimelineEntry(BaseModel):
    """One BKS record on an instance timeline."""

    model_config = ConfigDict(frozen=True)

    time: float = Field(..., ge=0, description="Days since challenge start")
    team: str = Field(..., description="BKS holder")
    cost: int = Field(..., gt=0, description="BKS cost")


class Timeline(BaseModel):
    """Chronological BKS evolution of one instance, initial BKS first."""

    model_config = ConfigDict(frozen=True)

    instance: str = Field(..., description="Instance name")
    entries: tuple[TimelineEntry, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _strictly_improving(self) -> "Timeline":
        if self.entries[0].team != ORGANIZERS or self.entries[0].time != 0:
            raise ValueError("a timeline starts with the organizers' BKS at day 0")
        for previous, current in zip(self.entries, self.entries[1:], strict=False):
            if current.cost >= previous.cost:
                raise ValueError("timeline costs must strictly decrease")
            if current.time < previous.time:
                raise ValueError("timeline times must not decrease")
        return self

    @property
    def best(self) -> TimelineEntry:
        """Current BKS entry."""
        return self.entries[-1]

    @property
    def improved(self) -> bool:
        """Whether any team improved the initial BKS."""
        return len(self.entries) > 1


class ScoreRow(BaseModel):
    """Lead days and bonus of one team on one instance."""

    model_config = ConfigDict(frozen=True)

    team: str
    instance: str
    lead_days: float = Field(..., ge=0)
    bonus: float = Field(..., ge=0)


class ScoreReport(BaseModel):
    """Per-team, per-instance lead days, totals and final BKS holders."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[ScoreRow, ...] = Field(default_factory=tuple)
    totals: dict[str, float] = Field(default_factory=dict, description="Team totals")
    final_holders: dict[str, str] = Field(
        default_factory=dict, description="Final BKS holder per instance"
    )

    def lead_days(self, team: str, instance: str) -> float:
        """Lead days of a team on an instance, excluding the bonus."""
        return sum(
            row.lead_days
            for row in self.rows
            if row.team == team and row.instance == instance
        )

    def total(self, team: str) -> float:
        """Global score of a team; zero for teams that never led."""
        return self.totals.get(team, 0.0)
