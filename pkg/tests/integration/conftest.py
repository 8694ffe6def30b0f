"""Fixtures for CLI integration tests."""

from pathlib import Path

import pytest

from src.formats.instance_file import write_instance
from src.formats.solution_file import write_solution
from src.models.routing import Instance, Solution


@pytest.fixture
def instance_file(tmp_path: Path, small_instance: Instance) -> Path:
    """Write ``small_instance`` to ``T-n6-k2.vrp``."""
    path = tmp_path / f"{small_instance.name}.vrp"
    path.write_bytes(write_instance(small_instance))
    return path


@pytest.fixture
def solution_file(
    tmp_path: Path, small_instance: Instance, small_solution: Solution
) -> Path:
    """Write the optimal solution of ``small_instance``."""
    path = tmp_path / "optimal.sol"
    path.write_bytes(write_solution(small_instance, small_solution))
    return path


@pytest.fixture
def manifest_file(tmp_path: Path) -> Path:
    """Provide a three-spec manifest with distinct sizes."""
    path = tmp_path / "specs.manifest"
    path.write_text(
        "# n_total, depot, customers, demand, route_class, seed\n"
        "30, R, R, U, M, 1\n"
        "40, C, C, 1-10, S, 2\n"
        "50, E, RC, Q, L, 3\n"
    )
    return path
