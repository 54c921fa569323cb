"""Exact pulse phases for the Gauss sum pulse train.

Phases are kept as rational multiples of pi. The k-th pi-pulse of the
factorization sequence carries phi_k(l) = a_k(N) / l with
a_k(N) = (-1)^k * pi * N * (2k - 1), and phi_0 = 0. For realistic N the
raw angle is tens of millions of radians, so reduction modulo 2*pi is
done on the integer numerator before anything becomes a float.
"""
import math
from fractions import Fraction

from src.utils.errors import DomainError

TWO = Fraction(2)


def phase_a(k: int, n: int) -> int:
    """Coefficient of pi in a_k(N) = (-1)^k * pi * N * (2k - 1)."""
    if k < 1:
        raise DomainError(f"phase_a needs k >= 1, got k={k}")
    sign = -1 if k % 2 else 1
    return sign * n * (2 * k - 1)


def reduce_turns(coefficient: Fraction) -> Fraction:
    """Reduce a multiple of pi into [0, 2)."""
    return coefficient % TWO


def pulse_phase(k: int, n: int, l: int) -> Fraction:
    """phi_k(l) as an exact multiple of pi, reduced into [0, 2)."""
    if l < 1:
        raise DomainError(f"trial factor must be >= 1, got l={l}")
    if k < 0:
        raise DomainError(f"pulse index must be >= 0, got k={k}")
    if k == 0:
        return Fraction(0)
    numerator = phase_a(k, n) % (2 * l)
    return Fraction(numerator, l)


def to_radians(coefficient: Fraction) -> float:
    """Float view of an exact multiple of pi."""
    return math.pi * coefficient.numerator / coefficient.denominator


def to_degrees(coefficient: Fraction) -> Fraction:
    """Exact degrees of a multiple of pi."""
    return coefficient * 180
