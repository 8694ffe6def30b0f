"""Exception hierarchy for the toolkit and CLI exit-code mapping."""

from enum import Enum
from typing import Any

from src.core.logging import get_logger, run_id_var

logger = get_logger(__name__)

# Exit codes shared by every subcommand
EXIT_OK = 0
EXIT_DOMAIN_FAILURE = 1
EXIT_USAGE = 2


class FormatErrorKind(str, Enum):
    """Diagnostic kinds attached to format errors."""

    MISSING_SECTION = "MISSING_SECTION"
    MISSING_HEADER = "MISSING_HEADER"
    MISSING_COLUMN = "MISSING_COLUMN"
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    NON_INTEGER_TOKEN = "NON_INTEGER_TOKEN"
    DEPOT_DEMAND = "DEPOT_DEMAND"
    DEMAND_RANGE = "DEMAND_RANGE"
    COORDINATE_RANGE = "COORDINATE_RANGE"
    UNSUPPORTED_EDGE_WEIGHT = "UNSUPPORTED_EDGE_WEIGHT"
    UNSUPPORTED_TYPE = "UNSUPPORTED_TYPE"
    INVALID_INSTANCE = "INVALID_INSTANCE"
    EMPTY_ROUTE = "EMPTY_ROUTE"
    REPEATED_CUSTOMER = "REPEATED_CUSTOMER"
    MALFORMED_ROUTE_HEADER = "MALFORMED_ROUTE_HEADER"
    MISSING_COST = "MISSING_COST"
    DUPLICATE_COST = "DUPLICATE_COST"
    INVALID_TIME = "INVALID_TIME"
    INVALID_VALUE = "INVALID_VALUE"
    MALFORMED_LINE = "MALFORMED_LINE"


class XLBenchError(Exception):
    """Base exception for all toolkit errors."""

    exit_code: int = EXIT_USAGE
    error_code: str = "INTERNAL_ERROR"
    message: str = "An unexpected error occurred"

    def __init__(
        self,
        message: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        """Initialize the exception.

        Args:
            message: Human-readable error message.
            details: Additional error details.
        """
        self.message = message or self.__class__.message
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to a dictionary for structured reports."""
        response: dict[str, Any] = {
            "error": {
                "code": self.error_code,
                "message": self.message,
            }
        }

        run_id = run_id_var.get()
        if run_id:
            response["error"]["run_id"] = run_id

        if self.details:
            response["error"]["details"] = self.details

        return response


# ----------------------------------------------------------------------------
# Usage / IO / format errors (exit 2)
# ----------------------------------------------------------------------------


class UsageError(XLBenchError):
    """Invalid command-line usage or argument values."""

    error_code = "USAGE_ERROR"
    message = "Invalid arguments"


class FormatError(XLBenchError):
    """Malformed input file; always carries the offending line number."""

    error_code = "FORMAT_ERROR"
    message = "Malformed input file"

    def __init__(
        self,
        message: str | None = None,
        line: int = 0,
        kind: FormatErrorKind = FormatErrorKind.MALFORMED_LINE,
        details: dict[str, Any] | None = None,
    ) -> None:
        """Initialize the format error.

        Args:
            message: Human-readable diagnostic.
            line: 1-based line number of the offending input line.
            kind: Diagnostic kind.
            details: Additional error details.
        """
        self.line = line
        self.kind = kind
        merged = {"line": line, "kind": kind.value, **(details or {})}
        super().__init__(f"line {line}: {message or self.__class__.message}", merged)


class ManifestError(FormatError):
    """Malformed generator manifest line."""

    error_code = "MANIFEST_ERROR"
    message = "Malformed manifest line"


class UnknownInstanceError(XLBenchError):
    """An event or record refers to an instance that is not registered."""

    error_code = "UNKNOWN_INSTANCE"
    message = "Unknown instance"


class MissingBksError(XLBenchError):
    """A run record has no BKS entry to compute gaps against."""

    error_code = "MISSING_BKS"
    message = "No BKS entry for instance"


class UnknownStreamError(XLBenchError):
    """A random stream was requested with a tag outside the documented set."""

    error_code = "UNKNOWN_STREAM"
    message = "Unknown random stream tag"


# ----------------------------------------------------------------------------
# Domain failures (exit 1)
# ----------------------------------------------------------------------------


class DomainError(XLBenchError):
    """Base class for failures of the modelled problem itself."""

    exit_code = EXIT_DOMAIN_FAILURE
    error_code = "DOMAIN_ERROR"


class UnknownCustomerError(DomainError):
    """A route references a customer index that the instance does not have."""

    error_code = "UNKNOWN_CUSTOMER"
    message = "Route references an unknown customer index"


class InfeasibleSolutionError(DomainError):
    """A solution violates coverage or capacity where feasibility is required."""

    error_code = "INFEASIBLE_SOLUTION"
    message = "Solution is infeasible"


class BinPackInfeasibleError(DomainError):
    """An item is larger than the bin capacity."""

    error_code = "BINPACK_INFEASIBLE"
    message = "Item exceeds bin capacity"


class GenerationError(DomainError):
    """Instance generation could not complete for a spec."""

    error_code = "GENERATION_ERROR"
    message = "Instance generation failed"


def handle_exception(exc: BaseException) -> int:
    """Log an exception at the appropriate level and map it to an exit code.

    Args:
        exc: The exception that escaped a subcommand.

    Returns:
        Process exit code.
    """
    if isinstance(exc, XLBenchError):
        if exc.exit_code == EXIT_DOMAIN_FAILURE:
            logger.error(
                "domain_failure",
                error_code=exc.error_code,
                message=exc.message,
                details=exc.details,
            )
        else:
            logger.warning(
                "usage_error",
                error_code=exc.error_code,
                message=exc.message,
                details=exc.details,
            )
        return exc.exit_code

    if isinstance(exc, OSError):
        logger.warning("io_error", exc_type=type(exc).__name__, exc_message=str(exc))
        return EXIT_USAGE

    logger.exception(
        "unhandled_exception",
        exc_type=type(exc).__name__,
        exc_message=str(exc),
    )
    return EXIT_USAGE
