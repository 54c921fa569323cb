"""Trial-factor enumeration."""
import math
from typing import Literal

import numpy as np

from src.utils.errors import DomainError

Strategy = Literal["primes", "range"]


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def trial_factors(
    n: int,
    strategy: Strategy = "range",
    l_min: int | None = None,
    l_max: int | None = None,
) -> list[int]:
    """Ordered trial factors for N.

    ``primes`` tests every prime up to floor(sqrt(N)), the worst case the
    prime number theorem bounds by sqrt(N)/log(N) trials. ``range`` tests
    every integer in [l_min, l_max].
    """
    if n < 2:
        raise DomainError(f"N must be >= 2, got {n}")
    if strategy == "primes":
        return primes_up_to(math.isqrt(n))
    if strategy == "range":
        if l_min is None or l_max is None:
            raise DomainError("range strategy needs l_min and l_max")
        if not 1 <= l_min <= l_max:
            raise DomainError(f"need 1 <= l_min <= l_max, got [{l_min}, {l_max}]")
        return list(range(l_min, l_max + 1))
    raise DomainError(f"unknown trial strategy: {strategy!r}")


def divisors_in(n: int, trial_set: list[int]) -> list[int]:
    """Members of the trial set that divide N."""
    return [l for l in trial_set if n % l == 0]


def prime_count_bound(n: int) -> float:
    """sqrt(N) / log(N), the expected number of prime trials."""
    return math.sqrt(n) / math.log(n)
