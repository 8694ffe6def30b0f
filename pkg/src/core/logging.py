"""Structured logging for the command line: structlog on top of stdlib, on stderr."""

import logging
import multiprocessing
import os
import sys
import time
import uuid
from collections.abc import Iterator, MutableMapping
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any

import structlog

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
LOG_FORMATS = ("json", "console")

# Identifier of the current xlbench invocation
run_id_var: ContextVar[str | None] = ContextVar("run_id", default=None)

EventDict = MutableMapping[str, Any]


def add_run_id(_logger: Any, _method_name: str, event_dict: EventDict) -> EventDict:
    """Stamp an entry with the invocation's run_id.

    Args:
        _logger: Logger instance (unused, required by structlog processor signature).
        _method_name: Method name (unused, required by structlog processor signature).
        event_dict: Event dictionary to modify.

    Returns:
        The event dictionary, with run_id when one is bound.
    """
    run_id = run_id_var.get()
    if run_id:
        event_dict.setdefault("run_id", run_id)
    return event_dict


def add_worker_pid(_logger: Any, _method_name: str, event_dict: EventDict) -> EventDict:
    """Tag entries emitted inside solver pool workers with their process id."""
    if multiprocessing.parent_process() is not None:
        event_dict["worker_pid"] = os.getpid()
    return event_dict


def _renderers(log_format: str) -> list[structlog.types.Processor]:
    if log_format == "console":
        return [structlog.dev.ConsoleRenderer(colors=False)]
    return [
        structlog.processors.format_exc_info,
        structlog.processors.JSONRenderer(sort_keys=True),
    ]


def setup_logging(log_level: str = "INFO", log_format: str = "json") -> None:
    """Configure structlog for one invocation.

    Logs go to stderr so that stdout carries command reports only.

    Args:
        log_level: One of LOG_LEVELS.
        log_format: 'json' for pipelines, 'console' for humans.

    Raises:
        ValueError: If the level or format is unknown.
    """
    level = log_level.upper()
    if level not in LOG_LEVELS or log_format not in LOG_FORMATS:
        raise ValueError(f"unsupported logging setup {log_level!r}/{log_format!r}")

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.UnicodeDecoder(),
            add_run_id,
            add_worker_pid,
            *_renderers(log_format),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level),
        force=True,
    )
    # numpy/pandas occasionally route warnings through logging
    logging.getLogger("py.warnings").setLevel(logging.ERROR)


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """Get a structured logger, named after the calling module by convention."""
    return structlog.get_logger(name)  # type: ignore[no-any-return]


def new_run_id() -> str:
    """Short random identifier for one invocation."""
    return uuid.uuid4().hex[:8]


def bind_run_context(run_id: str, **kwargs: Any) -> None:
    """Bind invocation context for structured logging.

    Args:
        run_id: Invocation identifier.
        **kwargs: Additional context to bind (subcommand, input paths).
    """
    run_id_var.set(run_id)
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=run_id, **kwargs)


def clear_run_context() -> None:
    """Drop the invocation context after a command completes."""
    run_id_var.set(None)
    structlog.contextvars.clear_contextvars()


@contextmanager
def log_duration(
    logger: structlog.stdlib.BoundLogger, event: str, **fields: Any
) -> Iterator[dict[str, Any]]:
    """Log ``event`` with ``duration_ms`` when the block exits.

    The yielded dict collects outcome fields set inside the block; they are
    logged together with ``fields``.
    """
    outcome: dict[str, Any] = {}
    started = time.perf_counter()
    try:
        yield outcome
    finally:
        duration_ms = round((time.perf_counter() - started) * 1000, 2)
        logger.info(event, duration_ms=duration_ms, **fields, **outcome)
