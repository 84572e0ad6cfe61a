"""
Services __init__ for pl-spectra.
"""

from . import algebra, entangle, lubanski, reports, spectral
from .errors import PLError

__all__ = ["algebra", "entangle", "lubanski", "reports", "spectral", "PLError"]
