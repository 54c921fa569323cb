"""Schedule and factorization endpoints."""
import math
import time
from contextlib import contextmanager

from fastapi import APIRouter, HTTPException

from src.api.monitoring import active_requests, request_count, request_latency, trials_evaluated
from src.api.schemas import (
    FactorRequest,
    FactorResponse,
    PulseOut,
    ScheduleRequest,
    ScheduleResponse,
    TrialOut,
)
from src.gauss_core.schedule import Timing, format_degrees, phase_schedule, render_schedule
from src.gauss_core.signals import classify, evaluate_trials, factoring_problem
from src.utils.errors import DomainError
from src.utils.logging_utils import setup_logging

logger = setup_logging(name=__name__)

router = APIRouter(tags=["experiment"])


@contextmanager
def _instrumented(endpoint: str):
    """Count, time and map errors for one request."""
    active_requests.inc()
    start_time = time.time()
    status = "success"
    try:
        yield
    except DomainError as e:
        status = "rejected"
        logger.warning(f"{endpoint} rejected: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        status = "error"
        logger.error(f"{endpoint} error: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=f"{endpoint} failed: {str(e)}")
    finally:
        latency = time.time() - start_time
        request_latency.labels(endpoint=endpoint).observe(latency)
        request_count.labels(endpoint=endpoint, status=status).inc()
        active_requests.dec()


@router.post("/schedule", response_model=ScheduleResponse)
async def schedule(request: ScheduleRequest):
    """Pulse phases and timings for one trial factor."""
    with _instrumented("schedule"):
        logger.info(f"Schedule request: N={request.N}, l={request.l}, m={request.m}")
        timing = Timing(T_us=request.T_us, tau_pi_us=request.tau_pi_us)
        built = phase_schedule(request.N, request.l, request.m, timing)
        pulses = [
            PulseOut(
                k=str(p.k),
                start_us=p.start_us,
                duration_us=p.duration_us,
                area_over_pi=p.area_target / math.pi,
                phase_deg=format_degrees(p.phase_over_pi),
            )
            for p in built.pulses
        ]
        return ScheduleResponse(
            N=request.N, l=request.l, m=request.m, pulses=pulses, export=render_schedule(built)
        )


@router.post("/factor", response_model=FactorResponse)
async def factor(request: FactorRequest):
    """Ideal Gauss sum over the trial factors."""
    with _instrumented("factor"):
        logger.info(f"Factor request: N={request.N}, M={request.M}, strategy={request.strategy}")
        problem = factoring_problem(
            request.N, request.M, request.strategy, request.l_min, request.l_max
        )
        results = evaluate_trials(problem, request.threshold)
        trials_evaluated.inc(len(results))
        claimed, _ = classify(results, request.threshold)
        claimed_set = set(claimed)
        return FactorResponse(
            N=request.N,
            M=request.M,
            trials=[
                TrialOut(l=r.l, C=r.total, is_divisor=r.is_divisor, classified=r.l in claimed_set)
                for r in results
            ],
            claimed_factors=claimed,
            num_trials=len(results),
        )
