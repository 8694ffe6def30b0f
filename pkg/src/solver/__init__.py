"""Baseline CVRP solver: savings construction and granular local search."""

from src.solver.local_search import local_search
from src.solver.neighbors import nearest_neighbors
from src.solver.runner import run_many, solve
from src.solver.savings import savings_construct
from src.solver.state import RoutingState

__all__ = [
    "RoutingState",
    "local_search",
    "nearest_neighbors",
    "run_many",
    "savings_construct",
    "solve",
]
