"""Pytest configuration and shared fixtures."""

from pathlib import Path

import pytest

from src.config.settings import Settings
from src.models.generation import (
    CustomerPosition,
    DemandDistribution,
    DepotPosition,
    GenSpec,
    RouteClass,
)
from src.models.routing import Instance, Point, Solution

# ============================================================================
# Settings Fixtures
# ============================================================================


@pytest.fixture
def test_settings() -> Settings:
    """Provide test settings with short budgets."""
    return Settings(
        log_level="DEBUG",
        binpack_time_limit=5.0,
        solver_time_limit=1.0,
        neighbor_k=8,
    )


# ============================================================================
# Instance Fixtures
# ============================================================================


@pytest.fixture
def small_instance() -> Instance:
    """Provide a five-customer instance with capacity 10 and k_min 2.

    Depot at (0, 0); customers 1-2 to the east, 3-5 to the north.
    """
    return Instance(
        name="T-n6-k2",
        depot=Point(x=0, y=0),
        customers=(
            Point(x=3, y=0),
            Point(x=6, y=0),
            Point(x=0, y=4),
            Point(x=0, y=8),
            Point(x=3, y=8),
        ),
        demands=(4, 4, 3, 3, 3),
        capacity=10,
        k_min=2,
    )


@pytest.fixture
def small_solution() -> Solution:
    """Provide the optimal solution of ``small_instance`` (cost 12 + 20 = 32)."""
    return Solution.from_lists([[1, 2], [3, 4, 5]])


@pytest.fixture
def small_spec() -> GenSpec:
    """Provide a small generation spec exercising clustering and SL demands."""
    return GenSpec(
        n_total=60,
        depot_pos=DepotPosition.RANDOM,
        customer_pos=CustomerPosition.RANDOM_CLUSTERED,
        demand_dist=DemandDistribution.SMALL_LARGE,
        route_class=RouteClass.SHORT,
        master_seed=7,
    )


# ============================================================================
# File Fixtures
# ============================================================================


@pytest.fixture
def bks_csv(tmp_path: Path) -> Path:
    """Provide a BKS CSV for two synthetic instances."""
    path = tmp_path / "bks.csv"
    path.write_text("instance,cost,method\nT-n6-k2,100,seed\nT-n11-k3,200,seed\n")
    return path


@pytest.fixture
def duel_log(tmp_path: Path) -> Path:
    """Provide the four-event log of the lead-time illustration.

    Team A improves on day 5, B on day 13, A on day 23 and B submits a
    non-improving value on day 25.
    """
    path = tmp_path / "events.log"
    path.write_text(
        "# time, team, instance, cost\n"
        "5, A, X-n101-k10, 990\n"
        "13, B, X-n101-k10, 980\n"
        "23, A, X-n101-k10, 970\n"
        "25, B, X-n101-k10, 975\n"
    )
    return path


@pytest.fixture
def duel_bks(tmp_path: Path) -> Path:
    """Provide the initial BKS of the lead-time illustration instance."""
    path = tmp_path / "duel_bks.csv"
    path.write_text("instance,cost,method\nX-n101-k10,1000,organizers\n")
    return path
