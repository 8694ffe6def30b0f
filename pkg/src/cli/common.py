"""Argument types and file helpers shared by the subcommands."""

import argparse
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.config.settings import Settings
from src.core.exceptions import UsageError
from src.data import reference_attributes, reference_bks
from src.formats.instance_file import parse_instance
from src.formats.tables import read_attribute_manifest, read_bks_table
from src.models.analytics import BksTable
from src.models.generation import U64_MAX, InstanceAttributes
from src.models.routing import Instance

# Value of --bks / --manifest selecting the bundled reference tables
REFERENCE = "reference"


def u64(token: str) -> int:
    """argparse type for unsigned 64-bit seeds."""
    try:
        value = int(token, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{token!r} is not an integer") from None
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError(f"{token} is outside [0, 2^64 - 1]")
    return value


def positive_float(token: str) -> float:
    """argparse type for strictly positive reals."""
    try:
        value = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{token!r} is not a number") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{token} must be positive")
    return value


def positive_int(token: str) -> int:
    """argparse type for integers >= 1."""
    try:
        value = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{token!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{token} must be at least 1")
    return value


def non_negative_int(token: str) -> int:
    """argparse type for integers >= 0."""
    try:
        value = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{token!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{token!r} must be a non-negative integer")
    return value


def build_settings(**overrides: Any) -> Settings:
    """Settings from flag values; unset flags (None) keep their defaults.

    Raises:
        UsageError: If a flag value is out of range.
    """
    values = {key: value for key, value in overrides.items() if value is not None}
    try:
        return Settings(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise UsageError(
            f"invalid value for {field}: {first['msg']}", details={"field": field}
        ) from None


def read_input(path: Path) -> bytes:
    """Read an input file.

    Raises:
        UsageError: If the file does not exist or is not a regular file.
    """
    if not path.is_file():
        raise UsageError(f"no such file: {path}", details={"path": str(path)})
    return path.read_bytes()


def load_instance(path: Path) -> Instance:
    """Parse an instance file from disk."""
    return parse_instance(read_input(path))


def load_bks(source: str) -> BksTable:
    """BKS table from a CSV path or the bundled reference table."""
    if source == REFERENCE:
        return reference_bks()
    path = Path(source)
    read_input(path)
    return read_bks_table(path)


def load_attributes(source: str) -> dict[str, InstanceAttributes]:
    """Attribute manifest from a CSV path or the bundled reference rows."""
    if source == REFERENCE:
        return reference_attributes()
    path = Path(source)
    read_input(path)
    return read_attribute_manifest(path)


def ensure_out_dir(path: Path) -> Path:
    """Create the output directory.

    Raises:
        UsageError: If ``path`` exists and is not a directory.
    """
    if path.exists() and not path.is_dir():
        raise UsageError(f"{path} is not a directory", details={"path": str(path)})
    path.mkdir(parents=True, exist_ok=True)
    return path
