"""Test trial-factor enumeration."""
import math
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.gauss_core.trial_factors import (  # noqa: E402
    divisors_in,
    prime_count_bound,
    primes_up_to,
    trial_factors,
)
from src.utils.errors import DomainError  # noqa: E402
from tests.conftest import divisors_by_enumeration, primes_by_trial_division  # noqa: E402


@pytest.mark.unit
def test_primes_strategy_canonical(canonical_n):
    primes = trial_factors(canonical_n, "primes")
    assert primes == primes_by_trial_division(math.isqrt(canonical_n))
    assert len(primes) == 97
    assert primes[-1] == 509


@pytest.mark.unit
@pytest.mark.parametrize("n, expected", [(2, []), (3, []), (4, [2]), (9, [2, 3]), (50, [2, 3, 5, 7])])
def test_primes_strategy_small(n, expected):
    assert trial_factors(n, "primes") == expected


@pytest.mark.unit
def test_sieve_against_trial_division():
    for limit in (0, 1, 2, 10, 97, 1000):
        assert primes_up_to(limit) == primes_by_trial_division(limit)


@pytest.mark.unit
def test_range_strategy():
    assert trial_factors(263193, "range", 1, 200) == list(range(1, 201))
    assert trial_factors(10, "range", 5, 5) == [5]


@pytest.mark.unit
def test_bad_arguments():
    with pytest.raises(DomainError):
        trial_factors(1, "primes")
    with pytest.raises(DomainError):
        trial_factors(100, "range")
    with pytest.raises(DomainError):
        trial_factors(100, "range", 0, 10)
    with pytest.raises(DomainError):
        trial_factors(100, "range", 10, 9)
    with pytest.raises(DomainError):
        trial_factors(100, "fermat")  # type: ignore[arg-type]


@pytest.mark.unit
def test_divisors_in(canonical_n, canonical_divisors):
    trials = list(range(2, 201))
    assert divisors_in(canonical_n, trials) == canonical_divisors
    assert divisors_in(canonical_n, trials) == divisors_by_enumeration(canonical_n, 2, 200)


@pytest.mark.unit
def test_prime_count_bound(canonical_n):
    bound = prime_count_bound(canonical_n)
    assert bound == pytest.approx(math.sqrt(canonical_n) / math.log(canonical_n))
    assert 40 < bound < len(trial_factors(canonical_n, "primes"))
