"""API request/response schemas."""
from typing import List, Literal, Optional

from pydantic import BaseModel, Field

from src.utils.config import (
    DEFAULT_L_MAX,
    DEFAULT_L_MIN,
    DEFAULT_M,
    DEFAULT_T_US,
    DEFAULT_TAU_PI_US,
    DEFAULT_THRESHOLD,
)


class ScheduleRequest(BaseModel):
    """Schedule request schema."""
    N: int = Field(..., ge=2, description="Number to factor")
    l: int = Field(..., ge=1, description="Trial factor")
    m: int = Field(..., ge=0, description="Factorization index")
    T_us: float = Field(DEFAULT_T_US, gt=0, description="Free time between pulses (us)")
    tau_pi_us: float = Field(DEFAULT_TAU_PI_US, gt=0, description="pi-pulse length (us)")


class PulseOut(BaseModel):
    """One pulse as handed to the synthesizer."""
    k: str = Field(..., description="Pulse index or initial/final")
    start_us: float
    duration_us: float
    area_over_pi: float
    phase_deg: str = Field(..., description="Phase in [0, 360), 6 decimals")


class ScheduleResponse(BaseModel):
    """Schedule response schema."""
    N: int
    l: int
    m: int
    pulses: List[PulseOut]
    export: str = Field(..., description="Schedule export text")


class FactorRequest(BaseModel):
    """Factorization request schema."""
    N: int = Field(..., ge=2, description="Number to factor")
    M: int = Field(DEFAULT_M, ge=0, le=200, description="Truncation order")
    strategy: Literal["primes", "range"] = Field("range", description="Trial factor set")
    l_min: int = Field(DEFAULT_L_MIN, ge=1)
    l_max: int = Field(DEFAULT_L_MAX, ge=1, le=100_000)
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0, lt=1)


class TrialOut(BaseModel):
    """Gauss sum for one trial factor."""
    l: int
    C: float = Field(..., ge=-1, le=1)
    is_divisor: bool
    classified: bool


class FactorResponse(BaseModel):
    """Factorization response schema."""
    N: int
    M: int
    trials: List[TrialOut]
    claimed_factors: List[int]
    num_trials: int


class HealthResponse(BaseModel):
    """Health check response schema."""
    status: str = Field(..., description="Service status")
    version: Optional[str] = Field(None, description="Package version")
