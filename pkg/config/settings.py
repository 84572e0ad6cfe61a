"""
Settings for pl-spectra.

Values come from the environment, after .env loading. CLI flags override them.
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


def _load_env() -> None:
    """Load .env (low priority, never overrides the real environment)."""
    env = os.getenv("ENVIRONMENT", "development")
    env_file = f".env.{env}" if env != "development" else ".env"
    env_path = Path(env_file)
    if env_path.exists():
        load_dotenv(env_path, override=False)
    else:
        load_dotenv(".env", override=False)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning("Ignoring malformed %s=%r, using %s", name, raw, default)
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring malformed %s=%r, using %s", name, raw, default)
        return default


_load_env()

# Tolerances
PL_TOL = _env_float("PL_TOL", 1e-10)

# Defaults for CLI sweeps
PL_MAX_POWER = _env_int("PL_MAX_POWER", 8)
PL_MAX_TWICE_SPIN = _env_int("PL_MAX_TWICE_SPIN", 8)

# Worker threads for the verify sweep
PL_CONCURRENCY = max(1, _env_int("PL_CONCURRENCY", 4))

# Logging
PL_LOG_LEVEL = os.getenv("PL_LOG_LEVEL", "WARNING").upper()


def default_tolerance() -> float:
    """Re-read PL_TOL so a value exported after import still applies."""
    return _env_float("PL_TOL", PL_TOL)
