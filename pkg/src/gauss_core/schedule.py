"""Pulse schedule for one trial factor: build, render and parse.

Canonical sequence: pi/2 at -90 deg, then m+1 pi-pulses with phases
phi_0..phi_m, then pi/2 at -90 deg. Consecutive pulses are separated by
a free interval T measured from the end of one pulse to the start of
the next.
"""
import math
import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Literal, Sequence

from pydantic import BaseModel, Field, model_validator

from src.gauss_core.phases import pulse_phase, reduce_turns, to_degrees, to_radians
from src.utils.config import DEFAULT_T_US, DEFAULT_TAU_PI_US
from src.utils.errors import DomainError, ScheduleFormatError

PulseIndex = int | Literal["initial", "final"]

# -90 deg, stored reduced
EDGE_PHASE = reduce_turns(Fraction(-1, 2))
SCHEDULE_COLUMNS = "k,start_us,duration_us,area_over_pi,phase_deg"
_HEADER_RE = re.compile(
    r"^# gaussfactor-schedule N=(?P<n>\d+) l=(?P<l>\d+) m=(?P<m>\d+) T_us=(?P<t>[0-9.]+)$"
)
_MICRO = Decimal("0.000001")
# rendered start, duration and T each carry up to 5e-7 us of rounding
_TIME_TOL_US = 2e-6


class Timing(BaseModel):
    """Pulse timing in microseconds."""
    T_us: float = Field(DEFAULT_T_US, gt=0, description="Free time between pulses")
    tau_pi_us: float = Field(DEFAULT_TAU_PI_US, gt=0, description="pi-pulse length")
    tau_pi2_us: float | None = Field(None, gt=0, description="pi/2-pulse length")

    @model_validator(mode="after")
    def _default_half_pulse(self) -> "Timing":
        if self.tau_pi2_us is None:
            self.tau_pi2_us = self.tau_pi_us / 2.0
        return self


class PulseSpec(BaseModel):
    """One timed, phased pulse."""
    k: PulseIndex = Field(..., description="pi-pulse index, or initial/final pi/2 role")
    area_target: float = Field(..., ge=0, description="Rotation angle (rad)")
    phase_num: int = Field(..., ge=0, description="Phase numerator, units of pi")
    phase_den: int = Field(..., ge=1, description="Phase denominator, units of pi")
    phase_rad: float = Field(..., description="Float mirror of the exact phase (rad)")
    start_us: float = Field(..., ge=0, description="Start time (us)")
    duration_us: float = Field(..., gt=0, description="Pulse length (us)")

    @model_validator(mode="after")
    def _check_phase(self) -> "PulseSpec":
        exact = self.phase_over_pi
        if not 0 <= exact < 2:
            raise ValueError(f"phase {exact} pi not reduced into [0, 2)")
        if abs(self.phase_rad - to_radians(exact)) > 1e-12:
            raise ValueError("float phase disagrees with exact phase")
        return self

    @classmethod
    def build(
        cls, k: PulseIndex, area_target: float, phase: Fraction, start_us: float, duration_us: float
    ) -> "PulseSpec":
        phase = reduce_turns(phase)
        return cls(
            k=k,
            area_target=area_target,
            phase_num=phase.numerator,
            phase_den=phase.denominator,
            phase_rad=to_radians(phase),
            start_us=start_us,
            duration_us=duration_us,
        )

    @property
    def phase_over_pi(self) -> Fraction:
        return Fraction(self.phase_num, self.phase_den)

    @property
    def is_pi_pulse(self) -> bool:
        return isinstance(self.k, int)

    @property
    def center_us(self) -> float:
        return self.start_us + self.duration_us / 2.0

    @property
    def end_us(self) -> float:
        return self.start_us + self.duration_us


class PhaseSchedule(BaseModel):
    """Full pi/2 - (pi)^(m+1) - pi/2 sequence for one (N, l, m)."""
    n: int = Field(..., ge=2, description="Number to factor")
    l: int = Field(..., ge=1, description="Trial factor")
    m: int = Field(..., ge=0, description="Factorization index")
    inter_pulse_time_us: float = Field(..., gt=0, description="Free time T between pulses")
    pulses: list[PulseSpec]

    @model_validator(mode="after")
    def _check_structure(self) -> "PhaseSchedule":
        pulses = self.pulses
        expected = ["initial", *range(self.m + 1), "final"]
        if [p.k for p in pulses] != expected:
            raise ValueError(f"pulse order must be {expected}")
        for edge in (pulses[0], pulses[-1]):
            if edge.phase_over_pi != EDGE_PHASE:
                raise ValueError("pi/2 pulses must carry phase -pi/2")
        for prev, nxt in zip(pulses, pulses[1:]):
            gap = nxt.start_us - prev.end_us
            if abs(gap - self.inter_pulse_time_us) > _TIME_TOL_US:
                raise ValueError(f"pulse {nxt.k} starts {gap:.6f} us after {prev.k}, not T")
        return self

    @property
    def pi_pulses(self) -> list[PulseSpec]:
        return self.pulses[1:-1]

    @property
    def midpoint_us(self) -> float:
        return (self.pulses[0].center_us + self.pulses[-1].center_us) / 2.0


def phase_schedule(n: int, l: int, m: int, timing: Timing | None = None) -> PhaseSchedule:
    """Build the canonical schedule for trial factor l and index m."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got m={m}")
    if l < 1:
        raise DomainError(f"trial factor must be >= 1, got l={l}")
    timing = timing or Timing()
    t_free = timing.T_us
    pulses: list[PulseSpec] = []
    clock = 0.0

    def add(k: PulseIndex, area: float, phase: Fraction, duration: float) -> None:
        nonlocal clock
        pulses.append(PulseSpec.build(k, area, phase, clock, duration))
        clock += duration + t_free

    add("initial", math.pi / 2, EDGE_PHASE, timing.tau_pi2_us)
    for k in range(m + 1):
        add(k, math.pi, pulse_phase(k, n, l), timing.tau_pi_us)
    add("final", math.pi / 2, EDGE_PHASE, timing.tau_pi2_us)
    return PhaseSchedule(n=n, l=l, m=m, inter_pulse_time_us=t_free, pulses=pulses)


def format_degrees(phase_over_pi: Fraction) -> str:
    """Exact degrees in [0, 360), rounded half-even to 6 decimals."""
    degrees = to_degrees(reduce_turns(phase_over_pi))
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(degrees.numerator) / Decimal(degrees.denominator)
        value = value.quantize(_MICRO, rounding=ROUND_HALF_EVEN)
        if value >= 360:
            value -= 360
    return f"{value:.6f}"


def _render_pulse(pulse: PulseSpec) -> str:
    return ",".join([
        str(pulse.k),
        f"{pulse.start_us:.6f}",
        f"{pulse.duration_us:.6f}",
        f"{pulse.area_target / math.pi:.6f}",
        format_degrees(pulse.phase_over_pi),
    ])


def render_schedule(schedule: PhaseSchedule) -> str:
    """Line-oriented export text, LF endings, trailing newline."""
    lines = [
        f"# gaussfactor-schedule N={schedule.n} l={schedule.l} m={schedule.m} "
        f"T_us={schedule.inter_pulse_time_us:.6f}",
        SCHEDULE_COLUMNS,
    ]
    lines.extend(_render_pulse(p) for p in schedule.pulses)
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> PhaseSchedule:
    """Parse export text back into a PhaseSchedule.

    Phases are recomputed exactly from the header's N and l; every body
    line must render back to itself.
    """
    if not text.endswith("\n") or "\r" in text:
        raise ScheduleFormatError("schedule text must use LF endings with a trailing newline")
    lines = text[:-1].split("\n")
    if len(lines) < 5:
        raise ScheduleFormatError(f"schedule too short: {len(lines)} lines")
    header = _HEADER_RE.match(lines[0])
    if header is None:
        raise ScheduleFormatError(f"bad header line: {lines[0]!r}")
    if lines[1] != SCHEDULE_COLUMNS:
        raise ScheduleFormatError(f"bad column line: {lines[1]!r}")
    n, l, m = int(header["n"]), int(header["l"]), int(header["m"])
    body = lines[2:]
    if len(body) != m + 3:
        raise ScheduleFormatError(f"expected {m + 3} pulse lines for m={m}, got {len(body)}")

    pulses = []
    for row in body:
        fields = row.split(",")
        if len(fields) != 5:
            raise ScheduleFormatError(f"expected 5 fields: {row!r}")
        k_text, start, duration, area, _ = fields
        try:
            k: PulseIndex = k_text if k_text in ("initial", "final") else int(k_text)
            phase = EDGE_PHASE if isinstance(k, str) else pulse_phase(k, n, l)
            pulse = PulseSpec.build(k, float(area) * math.pi, phase, float(start), float(duration))
        except (ValueError, DomainError) as e:
            raise ScheduleFormatError(f"bad pulse line {row!r}: {e}") from e
        if _render_pulse(pulse) != row:
            raise ScheduleFormatError(f"pulse line does not match N={n}, l={l}: {row!r}")
        pulses.append(pulse)

    try:
        return PhaseSchedule(
            n=n, l=l, m=m, inter_pulse_time_us=float(header["t"]), pulses=pulses
        )
    except ValueError as e:
        raise ScheduleFormatError(f"inconsistent schedule: {e}") from e


def pulse_list(pulses: Sequence[PulseSpec] | PhaseSchedule) -> list[PulseSpec]:
    """Pulse list of a schedule or of a bare pulse sequence."""
    if isinstance(pulses, PhaseSchedule):
        return list(pulses.pulses)
    return list(pulses)
