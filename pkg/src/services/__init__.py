"""Domain services: evaluation, generation, bin packing, challenge scoring, analytics."""

from src.services.analytics import AnalyticsService, gap_percent, get_analytics_service
from src.services.binpack import ffd, k_min, lb_l1, lb_l2
from src.services.challenge import replay, score, verify_submission
from src.services.evaluation import rounded_distance, solution_cost, validate
from src.services.generator import InstanceGenerator, get_instance_generator
from src.services.random_streams import RandomStream, derive_stream

__all__ = [
    "AnalyticsService",
    "InstanceGenerator",
    "RandomStream",
    "derive_stream",
    "ffd",
    "gap_percent",
    "get_analytics_service",
    "get_instance_generator",
    "k_min",
    "lb_l1",
    "lb_l2",
    "replay",
    "rounded_distance",
    "score",
    "solution_cost",
    "validate",
    "verify_submission",
]
