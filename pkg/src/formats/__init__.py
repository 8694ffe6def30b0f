"""File formats: instances, solutions, manifests, event logs and CSV tables."""

from src.formats.event_log import EventLogLine, parse_day_offset, parse_event_log
from src.formats.instance_file import parse_instance, write_instance
from src.formats.manifest import format_manifest, parse_manifest
from src.formats.solution_file import parse_solution, write_solution

__all__ = [
    "EventLogLine",
    "format_manifest",
    "parse_day_offset",
    "parse_event_log",
    "parse_instance",
    "parse_manifest",
    "parse_solution",
    "write_instance",
    "write_solution",
]
