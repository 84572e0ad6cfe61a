"""
Config __init__ for pl-spectra.
"""

from .settings import (
    PL_CONCURRENCY,
    PL_LOG_LEVEL,
    PL_MAX_POWER,
    PL_MAX_TWICE_SPIN,
    PL_TOL,
    default_tolerance,
)

__all__ = [
    "PL_TOL",
    "PL_MAX_POWER",
    "PL_MAX_TWICE_SPIN",
    "PL_CONCURRENCY",
    "PL_LOG_LEVEL",
    "default_tolerance",
]
