"""
Pytest fixtures for pl-spectra tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add path to project root
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from services.algebra import HalfInteger  # noqa: E402

SETTINGS_VARS = ("PL_TOL", "PL_MAX_POWER", "PL_MAX_TWICE_SPIN", "PL_CONCURRENCY", "PL_LOG_LEVEL")


@pytest.fixture(params=[1, 2, 3, 4, 5], ids=lambda t: f"2s={t}")
def spin(request) -> HalfInteger:
    """s = 1/2, 1, 3/2, 2, 5/2."""
    return HalfInteger(request.param)


@pytest.fixture(params=range(1, 11), ids=lambda t: f"2s={t}")
def sweep_spin(request) -> HalfInteger:
    """Every twice-spin from 1 to 10."""
    return HalfInteger(request.param)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(20240617)


@pytest.fixture
def eigenvectors():
    """v1..v4, the degenerate eigenvectors of S at spin 1/2."""
    from services.entangle import degenerate_eigenvectors

    return degenerate_eigenvectors()


@pytest.fixture
def clean_env(monkeypatch):
    """Environment without any PL_* overrides."""
    for name in SETTINGS_VARS:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch
