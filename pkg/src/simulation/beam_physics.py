"""Gaussian Raman-beam model: pulse-area errors, parabolic pulse-length
adaptation and cloud-ensemble averaging.

Units: positions in mm, times in us, speeds in m/s (= mm/ms), Rabi
frequencies in rad/s. The beam diameter is read as the 1/e^2 intensity
diameter, so the Rabi frequency falls off as exp(-2 x^2 / w^2) with
w = d/2. The peak Rabi frequency is calibrated so that a pulse of
tau_center is a pi-pulse on the axis; x_edge is where tau_edge is.
"""
import math
from pathlib import Path
from typing import Literal, Sequence

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.gauss_core.schedule import PhaseSchedule, PulseSpec, Timing, phase_schedule, pulse_list
from src.simulation.pulse_sim import evolve_ensemble, jitter_offsets, readout_vectors
from src.utils.errors import ConfigError, DomainError
from src.utils.logging_utils import setup_logging

logger = setup_logging(name=__name__)

# m/s -> mm/us
_MM_PER_US = 1e-3


class PhysicsConfig(BaseModel):
    """Beam geometry, atom kinematics, cloud size, adaptation and ensemble."""
    beam_diameter_mm: float = Field(30.0, gt=0, description="1/e^2 beam diameter d")
    atom_speed_m_s: float = Field(4.4, gt=0, description="Atom speed across the beam")
    cloud_diameter_mm: float = Field(5.0, gt=0, description="Cloud diameter in the beam")
    tau_center_us: float = Field(20.0, gt=0, description="Measured pi-pulse length on axis")
    tau_edge_us: float = Field(26.0, gt=0, description="Measured pi-pulse length at the edge")
    tau_fixed_us: float = Field(23.0, gt=0, description="pi-pulse length without adaptation")
    adaptation: Literal["off", "parabolic"] = Field("parabolic")
    pulse_length_reference: Literal["atom", "cloud_center"] = Field(
        "atom", description="Position the adapted pulse length is evaluated at"
    )
    ensemble_samples: int = Field(64, ge=1, description="Ensemble nodes")
    ensemble_scheme: Literal["quadrature", "monte_carlo"] = Field("quadrature")
    seed: int = Field(0, ge=0, description="Monte Carlo and jitter seed")
    phase_jitter: bool = Field(False, description="Add Gaussian laser phase noise")
    phase_jitter_sigma_rad: float = Field(1e-3, ge=0, description="Phase noise sigma")

    @model_validator(mode="after")
    def _check_calibration(self) -> "PhysicsConfig":
        if not self.tau_center_us < self.tau_edge_us:
            raise ValueError("tau_center_us must be shorter than tau_edge_us")
        square = math.isqrt(self.ensemble_samples) ** 2 == self.ensemble_samples
        if self.ensemble_scheme == "quadrature" and not square:
            raise ValueError(
                f"quadrature needs a square number of ensemble_samples, got {self.ensemble_samples}"
            )
        return self

    @property
    def waist_mm(self) -> float:
        return self.beam_diameter_mm / 2.0

    @property
    def peak_rabi_rad_s(self) -> float:
        return math.pi / (self.tau_center_us * 1e-6)

    @property
    def x_edge_mm(self) -> float:
        return self.waist_mm * math.sqrt(math.log(self.tau_edge_us / self.tau_center_us) / 2.0)

    @property
    def speed_mm_per_us(self) -> float:
        return self.atom_speed_m_s * _MM_PER_US


class Trajectory(BaseModel):
    """Positions of one atom at each pulse center."""
    longitudinal_mm: list[float] = Field(..., description="Signed position along the flight")
    radial_mm: list[float] = Field(..., description="Distance from the beam axis")
    traversal_mm: float = Field(..., ge=0, description="Flight distance v (m+2) T")
    exceeds_beam: bool = Field(False, description="Traversal longer than the beam diameter")


def _gaussian(x: np.ndarray | float, config: PhysicsConfig) -> np.ndarray | float:
    return np.exp(-2.0 * np.square(x) / config.waist_mm**2)


def rabi_at_position(x: float | np.ndarray, config: PhysicsConfig) -> float | np.ndarray:
    """Rabi frequency Omega(x) = Omega0 exp(-2 x^2 / w^2), rad/s."""
    return config.peak_rabi_rad_s * _gaussian(x, config)


def adapted_pulse_length(x: float | np.ndarray, config: PhysicsConfig) -> float | np.ndarray:
    """pi-pulse length at x: the parabola through both calibration points,
    or tau_fixed when adaptation is off."""
    if config.adaptation == "off":
        return np.full_like(np.asarray(x, dtype=np.float64), config.tau_fixed_us)[()]
    rise = config.tau_edge_us - config.tau_center_us
    return config.tau_center_us + rise * np.square(np.asarray(x) / config.x_edge_mm)


def pulse_area(x: float | np.ndarray, config: PhysicsConfig) -> float | np.ndarray:
    """Area theta(x) = Omega(x) tau(x) of a nominal pi-pulse centered at x."""
    return _area(x, adapted_pulse_length(x, config), config)


def _area(
    x_atom: float | np.ndarray, tau_us: float | np.ndarray, config: PhysicsConfig
) -> float | np.ndarray:
    # Omega(x) tau = pi exp(-2x^2/w^2) tau / tau_center, exact on the axis
    return math.pi * _gaussian(x_atom, config) * (np.asarray(tau_us) / config.tau_center_us)


def _pulse_times(pulses: list[PulseSpec]) -> np.ndarray:
    return np.array([p.center_us for p in pulses], dtype=np.float64)


def trajectory_positions(
    schedule: PhaseSchedule | Sequence[PulseSpec],
    entry_offset: float,
    config: PhysicsConfig,
    along_offset: float = 0.0,
) -> Trajectory:
    """Atom position at every pulse, with the sequence centered on the beam.

    The atom moves along the flight axis, x_j = v (t_j - t_mid); its
    perpendicular displacement in the cloud (``entry_offset``) combines
    with x_j in quadrature. ``along_offset`` shifts the atom along the
    flight axis within the cloud.
    """
    pulses = pulse_list(schedule)
    if not pulses:
        raise DomainError("trajectory needs at least one pulse")
    times = _pulse_times(pulses)
    midpoint = (times[0] + times[-1]) / 2.0
    longitudinal = config.speed_mm_per_us * (times - midpoint) + along_offset
    radial = np.hypot(longitudinal, entry_offset)

    if isinstance(schedule, PhaseSchedule):
        flight_us = (schedule.m + 2) * schedule.inter_pulse_time_us
    else:
        flight_us = pulses[-1].end_us - pulses[0].start_us
    traversal = config.speed_mm_per_us * flight_us
    exceeds = traversal > config.beam_diameter_mm
    if exceeds:
        logger.warning(
            f"Sequence of {len(pulses)} pulses spans {traversal:.2f} mm, "
            f"wider than the {config.beam_diameter_mm:.1f} mm beam"
        )
    return Trajectory(
        longitudinal_mm=longitudinal.tolist(),
        radial_mm=radial.tolist(),
        traversal_mm=traversal,
        exceeds_beam=exceeds,
    )


def ensemble_nodes(config: PhysicsConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(along, perpendicular, weight) samples of a uniform cloud disc.

    Quadrature: Gauss-Legendre in radius (with the r Jacobian) times a
    midpoint rule in angle, sqrt(samples) nodes each way, so samples must
    be a perfect square. Monte Carlo: seeded uniform draws with equal
    weights.
    """
    radius = config.cloud_diameter_mm / 2.0
    samples = config.ensemble_samples
    if config.ensemble_scheme == "monte_carlo":
        rng = np.random.default_rng(config.seed)
        rho = radius * np.sqrt(rng.random(samples))
        angle = 2.0 * math.pi * rng.random(samples)
        weights = np.full(samples, 1.0 / samples)
    else:
        n_radial = n_angular = math.isqrt(samples)
        nodes, gl_weights = np.polynomial.legendre.leggauss(n_radial)
        rho_1d = radius * (nodes + 1.0) / 2.0
        radial_weights = gl_weights * rho_1d
        angle_1d = 2.0 * math.pi * (np.arange(n_angular) + 0.5) / n_angular
        rho = np.repeat(rho_1d, n_angular)
        angle = np.tile(angle_1d, n_radial)
        weights = np.repeat(radial_weights, n_angular)
        weights = weights / weights.sum()
    return rho * np.cos(angle), rho * np.sin(angle), weights


def ensemble_cm(
    n: int,
    l: int,
    m: int,
    config: PhysicsConfig,
    timing: Timing | None = None,
) -> float:
    """Cloud-averaged readout of the canonical schedule in the Gaussian beam.

    Every atom gets the area pulse_area(r) at its own radial position r
    for each pulse. With ``pulse_length_reference = "cloud_center"`` the
    length is instead set once per pulse from the cloud-center position
    and only the intensity varies across the cloud.
    """
    schedule = phase_schedule(n, l, m, timing)
    pulses = schedule.pulses
    along, perpendicular, weights = ensemble_nodes(config)

    times = _pulse_times(pulses)
    longitudinal = (
        config.speed_mm_per_us * (times - schedule.midpoint_us)[None, :] + along[:, None]
    )
    radial = np.hypot(longitudinal, perpendicular[:, None])
    scale = np.array([p.area_target / math.pi for p in pulses])
    if config.pulse_length_reference == "cloud_center":
        center = trajectory_positions(schedule, 0.0, config)
        tau = np.asarray(adapted_pulse_length(np.asarray(center.longitudinal_mm), config))
        areas = _area(radial, tau[None, :], config)
    else:
        areas = np.asarray(pulse_area(radial, config))
    areas = areas * scale[None, :]

    phases = np.broadcast_to(np.array([p.phase_rad for p in pulses]), areas.shape)
    if config.phase_jitter:
        offsets = np.stack([
            jitter_offsets(config.seed, l, m, s, len(pulses), config.phase_jitter_sigma_rad)
            for s in range(len(weights))
        ])
        phases = phases + offsets

    signals = readout_vectors(evolve_ensemble(areas, phases))
    return float(np.dot(weights, signals))


def ensemble_trace(
    n: int, l: int, M: int, config: PhysicsConfig, timing: Timing | None = None
) -> np.ndarray:
    """Cloud-averaged c_m for m = 0..M."""
    return np.array([ensemble_cm(n, l, m, config, timing) for m in range(M + 1)])


def ideal_limit_config(adaptation: Literal["off", "parabolic"] = "parabolic") -> PhysicsConfig:
    """Config whose cloud and flight shrink onto the beam axis."""
    return PhysicsConfig(
        cloud_diameter_mm=1e-9,
        atom_speed_m_s=1e-9,
        adaptation=adaptation,
        tau_fixed_us=20.0,
    )


def load_physics_config(path: Path | str) -> PhysicsConfig:
    """Read a ``key = value`` physics config file."""
    path = Path(path)
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in PhysicsConfig.model_fields:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    try:
        config = PhysicsConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"{path}: {e}") from e
    logger.info(f"Loaded physics config from {path}")
    return config


def dump_physics_config(config: PhysicsConfig) -> str:
    """Config as ``key = value`` text, loadable by load_physics_config."""
    lines = []
    for key, value in config.model_dump().items():
        text = str(value).lower() if isinstance(value, bool) else str(value)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"
