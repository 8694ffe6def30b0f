"""Subcommand modules; each exposes ``register(subparsers)``."""

from src.cli.commands import generate, score, solve, stats, validate

COMMANDS = (generate, validate, solve, score, stats)

__all__ = ["COMMANDS"]
