"""Slice-Hessian stability certificates for relative equilibria."""

from ._core import (
    Error,
    NotRelativeEquilibrium,
    ParseError,
    System,
    ValidationError,
    load_system,
    parse_system,
    run_cli,
)

__all__ = [
    "Error",
    "NotRelativeEquilibrium",
    "ParseError",
    "System",
    "ValidationError",
    "load_system",
    "parse_system",
    "run_cli",
]
