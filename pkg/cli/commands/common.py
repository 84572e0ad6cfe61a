"""
Shared argument resolution for pl subcommands.
"""

import argparse

from config import settings
from services.algebra import HalfInteger
from services.errors import SpinValueError


def resolve_spin(args: argparse.Namespace) -> HalfInteger:
    """
    Spin from --spin or --twice-spin.

    Two forms are accepted:
    - --spin 3/2 (or --spin 2)
    - --twice-spin 3
    """
    spin_text = getattr(args, "spin", None)
    twice = getattr(args, "twice_spin", None)

    if spin_text is not None:
        spin = HalfInteger.parse(spin_text)
    elif twice is not None:
        spin = HalfInteger.from_twice(twice)
    else:
        raise SpinValueError("spin required: use --spin k[/2] or --twice-spin INT")

    return spin.require_buildable()


def resolve_tol(args: argparse.Namespace, default: float | None = None) -> float:
    """--tol, then the command-specific default if any, then PL_TOL."""
    if getattr(args, "tol", None) is not None:
        return float(args.tol)
    if default is not None:
        return default
    return settings.default_tolerance()
