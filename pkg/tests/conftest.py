"""Pytest configuration and fixtures."""
import sys
from pathlib import Path

import pytest

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.gauss_core.schedule import Timing  # noqa: E402
from src.simulation.beam_physics import PhysicsConfig, ideal_limit_config  # noqa: E402

CANONICAL_N = 263193
CANONICAL_DIVISORS = [3, 7, 21, 83, 151]


def divisors_by_enumeration(n: int, lo: int, hi: int) -> list[int]:
    """Divisors of n in [lo, hi] by trial division."""
    return [l for l in range(lo, hi + 1) if n % l == 0]


def primes_by_trial_division(limit: int) -> list[int]:
    """Primes <= limit without a sieve."""
    return [p for p in range(2, limit + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


@pytest.fixture
def canonical_n():
    """N = 3 x 7 x 83 x 151."""
    return CANONICAL_N


@pytest.fixture
def canonical_divisors():
    """Divisors of N in 2..200."""
    return list(CANONICAL_DIVISORS)


@pytest.fixture
def default_timing():
    """T = 100 us, tau_pi = 23 us."""
    return Timing()


@pytest.fixture
def beam_config():
    """Default Gaussian-beam physics."""
    return PhysicsConfig()


@pytest.fixture
def ideal_physics():
    """Physics config collapsed onto the beam axis."""
    return ideal_limit_config()


@pytest.fixture
def output_dir(tmp_path):
    """Temporary directory for CLI outputs."""
    out = tmp_path / "out"
    out.mkdir()
    return out
