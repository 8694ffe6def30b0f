"""Pydantic domain models."""

from src.models.analytics import (
    AttributeCell,
    BksEntry,
    BksTable,
    GroupAverage,
    InstanceSummary,
    RunRecord,
    SummaryReport,
)
from src.models.binpack import BinPackMethod, BinPackProblem, BinPackResult
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
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GeneratedInstance,
    GenSpec,
    GenTrace,
    InstanceAttributes,
    RouteClass,
)
from src.models.routing import (
    Finding,
    FindingKind,
    Instance,
    Point,
    Route,
    Solution,
    ValidationReport,
)
from src.models.solver import MoveKind, RunResult, SolverConfig, TracePoint

__all__ = [
    "ORGANIZERS",
    "AttributeCell",
    "BinPackMethod",
    "BinPackProblem",
    "BinPackResult",
    "BksEntry",
    "BksTable",
    "ChallengeConfig",
    "CustomerPosition",
    "DemandDistribution",
    "DepotPosition",
    "Finding",
    "FindingKind",
    "GenSpec",
    "GenTrace",
    "GeneratedInstance",
    "GroupAverage",
    "Instance",
    "InstanceAttributes",
    "InstanceSummary",
    "MoveKind",
    "Point",
    "RejectionReason",
    "Route",
    "RouteClass",
    "RunRecord",
    "RunResult",
    "ScoreReport",
    "ScoreRow",
    "Solution",
    "SolverConfig",
    "SubmissionEvent",
    "SummaryReport",
    "Timeline",
    "TimelineEntry",
    "TracePoint",
    "ValidationReport",
    "Verdict",
]
