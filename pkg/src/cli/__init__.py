"""Command-line interface."""

from src.cli.app import build_parser

__all__ = ["build_parser"]
