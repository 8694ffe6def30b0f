"""Baseline solver configuration and run metadata."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.models.generation import U64_MAX
from src.models.routing import Solution


class MoveKind(str, Enum):
    """Local search neighbourhoods."""

    RELOCATE = "relocate"
    SWAP = "swap"
    TWO_OPT_INTRA = "two_opt_intra"
    TWO_OPT_STAR = "two_opt_star"


class SolverConfig(BaseModel):
    """Search budget, seed and neighbourhood settings of one solver run."""

    model_config = ConfigDict(frozen=True)

    time_limit: float = Field(default=60.0, gt=0, description="Wall-clock budget, seconds")
    rng_seed: int = Field(default=0, ge=0, le=U64_MAX, description="Run seed")
    neighbor_k: int = Field(default=20, ge=1, description="Granular neighbourhood size")
    moves: frozenset[MoveKind] = Field(
        default=frozenset(MoveKind), min_length=1, description="Enabled moves"
    )
    iteration_limit: int | None = Field(
        default=None,
        ge=0,
        description="Restart budget; when set the wall clock is ignored",
    )
    perturbation_moves: int = Field(
        default=6, ge=1, description="Random relocations applied per restart"
    )


class TracePoint(BaseModel):
    """Incumbent cost at a point of the run."""

    model_config = ConfigDict(frozen=True)

    elapsed: float = Field(..., ge=0)
    iteration: int = Field(..., ge=0)
    cost: int = Field(..., ge=0)


class RunResult(BaseModel):
    """Best solution of a run plus its metadata."""

    model_config = ConfigDict(frozen=True)

    instance: str
    seed: int
    solution: Solution
    cost: int = Field(..., ge=0)
    initial_cost: int = Field(..., ge=0)
    elapsed: float = Field(..., ge=0)
    iterations: int = Field(..., ge=0)
    trace: tuple[TracePoint, ...] = Field(default_factory=tuple)
