"""Runners that regenerate each figure's data as a DataFrame.

Column layouts:
    signal trace     m, c_m
    factorization    l, C, abs_C, is_divisor, classified
    contrast scan    M, V
    adaptation       m, c_adapted, c_fixed
    primes           l
"""
from pathlib import Path
from typing import Literal, Sequence

import numpy as np
import pandas as pd

from src.gauss_core.schedule import Timing, phase_schedule, render_schedule
from src.gauss_core.signals import (
    GaussSumResult,
    SignalFn,
    classify,
    contrast_report,
    evaluate_trials,
    factoring_problem,
    gauss_sum_result,
    signal_trace,
)
from src.gauss_core.trial_factors import Strategy, divisors_in, prime_count_bound, trial_factors
from src.simulation.beam_physics import PhysicsConfig, ensemble_trace
from src.simulation.pulse_sim import simulate_cm
from src.utils.config import CSV_FLOAT_FORMAT, DEFAULT_THRESHOLD
from src.utils.errors import DomainError
from src.utils.logging_utils import setup_logging

logger = setup_logging(name=__name__)

Engine = Literal["closed-form", "pulse-sim"]


def signal_source(
    physics: PhysicsConfig | None = None,
    timing: Timing | None = None,
    engine: Engine = "closed-form",
) -> SignalFn:
    """c_0..c_M provider for the requested model.

    With physics the Gaussian-beam ensemble is simulated; otherwise the
    closed form, or the ideal pulse simulation when engine is pulse-sim.
    """
    if physics is not None:
        return lambda n, l, M: ensemble_trace(n, l, M, physics, timing)
    if engine == "pulse-sim":
        return lambda n, l, M: np.array([simulate_cm(n, l, m, timing) for m in range(M + 1)])
    return signal_trace


def to_csv(df: pd.DataFrame) -> str:
    """CSV text: header row, LF endings, 12 significant digits."""
    return df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def run_signal_trace(
    n: int,
    l: int,
    M: int,
    physics: PhysicsConfig | None = None,
    timing: Timing | None = None,
    engine: Engine = "closed-form",
) -> pd.DataFrame:
    """c_m(l) for m = 0..M."""
    logger.info(f"Signal trace N={n}, l={l}, M={M}, physics={'beam' if physics else 'ideal'}")
    trace = signal_source(physics, timing, engine)(n, l, M)
    return pd.DataFrame({"m": np.arange(M + 1), "c_m": np.asarray(trace, dtype=np.float64)})


def run_factorization(
    n: int,
    M: int,
    strategy: Strategy = "range",
    l_min: int | None = None,
    l_max: int | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    physics: PhysicsConfig | None = None,
    timing: Timing | None = None,
    threads: int = 1,
    engine: Engine = "closed-form",
    include_unit: bool = False,
) -> tuple[pd.DataFrame, list[int]]:
    """|C_N^(M)(l)| over the trial set plus classification.

    Returns the table and the claimed factors.
    """
    problem = factoring_problem(n, M, strategy, l_min, l_max)
    results = evaluate_trials(problem, threshold, signal_source(physics, timing, engine), threads)
    factors, _ = classify(results, threshold, include_unit)
    claimed = set(factors)
    df = pd.DataFrame({
        "l": [r.l for r in results],
        "C": [r.total for r in results],
        "abs_C": [abs(r.total) for r in results],
        "is_divisor": [r.is_divisor for r in results],
        "classified": [r.l in claimed for r in results],
    })
    logger.info(f"Claimed factors of {n}: {factors}")
    missed = [l for l in divisors_in(n, problem.trial_set) if l not in claimed and l != 1]
    if missed:
        logger.warning(f"Divisors below threshold {threshold:.4f}: {missed}")
    return df, factors


def results_by_order(
    n: int, M_max: int, traces: dict[int, Sequence[float]]
) -> dict[int, list[GaussSumResult]]:
    """GaussSumResults for every M in 1..M_max from full-length traces."""
    return {
        M: [gauss_sum_result(n, l, M, signals=trace[: M + 1]) for l, trace in traces.items()]
        for M in range(1, M_max + 1)
    }


def run_contrast_scan(
    n: int,
    M_max: int,
    strategy: Strategy = "range",
    l_min: int | None = None,
    l_max: int | None = None,
    physics: PhysicsConfig | None = None,
    timing: Timing | None = None,
    threads: int = 1,
    engine: Engine = "closed-form",
) -> pd.DataFrame:
    """Contrast V for every M in 1..M_max."""
    if M_max < 1:
        raise DomainError(f"contrast scan needs M_max >= 1, got {M_max}")
    problem = factoring_problem(n, M_max, strategy, l_min, l_max)
    full = evaluate_trials(problem, signal_fn=signal_source(physics, timing, engine), threads=threads)
    report = contrast_report(results_by_order(n, M_max, {r.l: r.signals for r in full}))
    logger.info(f"Contrast at M={M_max}: {report.entries[-1].V:.4f}")
    return pd.DataFrame(report.as_pairs(), columns=["M", "V"])


def run_adaptation_comparison(
    n: int,
    factors: Sequence[int],
    M: int,
    physics: PhysicsConfig,
    timing: Timing | None = None,
) -> pd.DataFrame:
    """Mean c_m over the given factors with and without parabolic adaptation."""
    if not factors:
        raise DomainError("adaptation comparison needs at least one factor")
    non_divisors = [l for l in factors if l < 1 or n % l]
    if non_divisors:
        raise DomainError(f"not divisors of {n}: {non_divisors}")
    columns = {}
    for name, mode in (("c_adapted", "parabolic"), ("c_fixed", "off")):
        config = physics.model_copy(update={"adaptation": mode})
        traces = np.array([ensemble_trace(n, l, M, config, timing) for l in factors])
        columns[name] = traces.mean(axis=0)
    logger.info(
        f"Adaptation comparison at m={M}: adapted {columns['c_adapted'][-1]:.4f}, "
        f"fixed {columns['c_fixed'][-1]:.4f}"
    )
    return pd.DataFrame({"m": np.arange(M + 1), **columns})


def run_primes(n: int) -> pd.DataFrame:
    """Prime trial factors up to floor(sqrt(N))."""
    primes = trial_factors(n, "primes")
    logger.info(f"{len(primes)} prime trials for N={n} (bound {prime_count_bound(n):.1f})")
    return pd.DataFrame({"l": primes})


def export_schedule(
    n: int, l: int, m: int, timing: Timing | None = None, path: Path | None = None
) -> str:
    """Schedule export text, written to ``path`` when given."""
    text = render_schedule(phase_schedule(n, l, m, timing))
    if path is not None:
        Path(path).write_text(text, newline="\n")
        logger.info(f"Saved schedule to {path}")
    return text
