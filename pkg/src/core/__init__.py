"""Core module: logging and the exception hierarchy."""

from src.core.exceptions import (
    EXIT_DOMAIN_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    BinPackInfeasibleError,
    DomainError,
    FormatError,
    FormatErrorKind,
    GenerationError,
    InfeasibleSolutionError,
    ManifestError,
    MissingBksError,
    UnknownCustomerError,
    UnknownInstanceError,
    UnknownStreamError,
    UsageError,
    XLBenchError,
    handle_exception,
)
from src.core.logging import get_logger, setup_logging

__all__ = [
    "EXIT_DOMAIN_FAILURE",
    "EXIT_OK",
    "EXIT_USAGE",
    "BinPackInfeasibleError",
    "DomainError",
    "FormatError",
    "FormatErrorKind",
    "GenerationError",
    "InfeasibleSolutionError",
    "ManifestError",
    "MissingBksError",
    "UnknownCustomerError",
    "UnknownInstanceError",
    "UnknownStreamError",
    "UsageError",
    "XLBenchError",
    "get_logger",
    "handle_exception",
    "setup_logging",
]
