"""Interference signals, truncated Gauss sums, classification and contrast."""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from src.gauss_core.trial_factors import Strategy, trial_factors
from src.utils.config import DEFAULT_THRESHOLD, MAX_RECOMMENDED_M
from src.utils.errors import DomainError
from src.utils.logging_utils import setup_logging

logger = setup_logging(name=__name__)

SignalFn = Callable[[int, int, int], Sequence[float]]


class FactoringProblem(BaseModel):
    """Number to factor, truncation order and trial factors."""
    n: int = Field(..., ge=2, description="Number to factor")
    M: int = Field(..., ge=0, description="Truncation order (summands minus one)")
    trial_set: list[int] = Field(..., description="Strictly increasing trial factors")

    @field_validator("trial_set")
    @classmethod
    def _check_trials(cls, trials: list[int]) -> list[int]:
        if any(l < 1 for l in trials):
            raise ValueError("trial factors must be >= 1")
        if any(b <= a for a, b in zip(trials, trials[1:])):
            raise ValueError("trial factors must be strictly increasing")
        return trials


class GaussSumResult(BaseModel):
    """Signals and truncated Gauss sum for one trial factor."""
    l: int = Field(..., ge=1, description="Trial factor")
    signals: list[float] = Field(..., min_length=1, description="c_m for m = 0..M")
    total: float = Field(..., description="C_N^(M)(l)")
    is_divisor: bool = Field(..., description="N mod l == 0")
    classified_factor: bool = Field(False, description="|total| >= threshold")

    @model_validator(mode="after")
    def _check_total(self) -> "GaussSumResult":
        if abs(self.total) > 1.0 + 1e-12:
            raise ValueError(f"|total| exceeds 1: {self.total}")
        mean = math.fsum(self.signals) / len(self.signals)
        if abs(mean - self.total) > 1e-12:
            raise ValueError("total is not the mean of the signals")
        return self

    @property
    def M(self) -> int:
        return len(self.signals) - 1


class ContrastEntry(BaseModel):
    M: int = Field(..., ge=0)
    V: float = Field(..., ge=-1.0, le=1.0)


class ContrastReport(BaseModel):
    """Contrast of the factorization pattern versus truncation order."""
    entries: list[ContrastEntry] = Field(default_factory=list)

    def as_pairs(self) -> list[tuple[int, float]]:
        return [(e.M, e.V) for e in self.entries]


def _check_args(l: int, m: int) -> None:
    if l < 1:
        raise DomainError(f"trial factor must be >= 1, got l={l}")
    if m < 0:
        raise DomainError(f"summation index must be >= 0, got m={m}")


def quadratic_residue(n: int, l: int, m: int) -> int:
    """r = (m^2 * N) mod l in exact integer arithmetic."""
    return (m * m % l) * (n % l) % l


def interference_signal_ideal(n: int, l: int, m: int) -> float:
    """c_m(l) = cos(2 pi m^2 N / l), evaluated on the reduced residue."""
    _check_args(l, m)
    return math.cos(2.0 * math.pi * quadratic_residue(n, l, m) / l)


def signal_trace(n: int, l: int, M: int) -> np.ndarray:
    """c_m(l) for m = 0..M."""
    _check_args(l, M)
    residues = np.array([quadratic_residue(n, l, m) for m in range(M + 1)], dtype=np.float64)
    return np.cos(2.0 * math.pi * residues / l)


def gauss_sum(n: int, l: int, M: int) -> float:
    """Truncated Gauss sum C_N^(M)(l), the mean of M+1 signals."""
    return math.fsum(signal_trace(n, l, M)) / (M + 1)


def gauss_sum_result(
    n: int,
    l: int,
    M: int,
    threshold: float = DEFAULT_THRESHOLD,
    signals: Sequence[float] | None = None,
) -> GaussSumResult:
    """GaussSumResult for l; ideal signals unless ``signals`` is given."""
    trace = [float(c) for c in (signal_trace(n, l, M) if signals is None else signals)]
    if len(trace) != M + 1:
        raise DomainError(f"expected {M + 1} signals, got {len(trace)}")
    total = math.fsum(trace) / (M + 1)
    return GaussSumResult(
        l=l,
        signals=trace,
        total=total,
        is_divisor=n % l == 0,
        classified_factor=abs(total) >= threshold,
    )


def factoring_problem(
    n: int,
    M: int,
    strategy: Strategy = "range",
    l_min: int | None = None,
    l_max: int | None = None,
) -> FactoringProblem:
    """Validated FactoringProblem for the chosen trial strategy."""
    if M > MAX_RECOMMENDED_M:
        logger.warning(
            f"M={M} needs {M + 1} pi-pulses; beyond {MAX_RECOMMENDED_M + 1} the atoms "
            f"leave the beam before the sequence ends"
        )
    try:
        return FactoringProblem(n=n, M=M, trial_set=trial_factors(n, strategy, l_min, l_max))
    except ValueError as e:
        raise DomainError(str(e)) from e


def evaluate_trials(
    problem: FactoringProblem,
    threshold: float = DEFAULT_THRESHOLD,
    signal_fn: SignalFn | None = None,
    threads: int = 1,
) -> list[GaussSumResult]:
    """Gauss sum for every trial factor, ordered by l.

    ``signal_fn(N, l, M)`` returns c_0..c_M; the ideal closed form is used
    when omitted. Results do not depend on ``threads``.
    """
    fn = signal_fn or signal_trace

    def evaluate(l: int) -> GaussSumResult:
        return gauss_sum_result(problem.n, l, problem.M, threshold, fn(problem.n, l, problem.M))

    logger.info(
        f"Evaluating {len(problem.trial_set)} trial factors for N={problem.n}, "
        f"M={problem.M}, threads={threads}"
    )
    if threads <= 1:
        return [evaluate(l) for l in problem.trial_set]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(evaluate, problem.trial_set))


def classify(
    results: Iterable[GaussSumResult],
    threshold: float = DEFAULT_THRESHOLD,
    include_unit: bool = False,
) -> tuple[list[int], list[int]]:
    """Split trial factors into (factors, non-factors) by |total| >= threshold.

    l = 1 always divides N and is left out unless ``include_unit``.
    """
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must lie in (0, 1), got {threshold}")
    factors: list[int] = []
    non_factors: list[int] = []
    for result in results:
        if result.l == 1 and not include_unit:
            continue
        (factors if abs(result.total) >= threshold else non_factors).append(result.l)
    return factors, non_factors


def contrast(results: Iterable[GaussSumResult]) -> float:
    """V = (A_f - A_n) / (A_f + A_n) over divisors and non-divisors."""
    at_factors: list[float] = []
    at_non_factors: list[float] = []
    for result in results:
        (at_factors if result.is_divisor else at_non_factors).append(abs(result.total))
    if not at_factors or not at_non_factors:
        raise DomainError(
            f"contrast needs divisors and non-divisors, got {len(at_factors)} "
            f"and {len(at_non_factors)}"
        )
    mean_f = math.fsum(at_factors) / len(at_factors)
    mean_n = math.fsum(at_non_factors) / len(at_non_factors)
    if mean_f + mean_n <= 0:
        raise DomainError("contrast undefined: all Gauss sums vanish")
    return (mean_f - mean_n) / (mean_f + mean_n)


def contrast_report(results_by_M: dict[int, list[GaussSumResult]]) -> ContrastReport:
    """(M, V) for every truncation order, ascending in M."""
    return ContrastReport(
        entries=[ContrastEntry(M=M, V=contrast(results_by_M[M])) for M in sorted(results_by_M)]
    )
