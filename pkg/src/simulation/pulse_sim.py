"""Resonant Rabi rotations of the hyperfine doublet.

State vectors are ordered (ground, excited) = (|F=1, m_F=0>, |F=2, m_F=0>).
In the rotating frame on resonance the free evolution between pulses is
the identity, so a schedule reduces to a product of rotations

    U(theta, phi) = [[cos(theta/2),                 -i e^{-i phi} sin(theta/2)],
                     [-i e^{+i phi} sin(theta/2),    cos(theta/2)             ]]

and the readout c = P_e - P_g. With this pair of conventions the
canonical schedule yields c = cos(2 pi m^2 N / l).
"""
import math
from typing import TYPE_CHECKING, Callable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.gauss_core.schedule import PhaseSchedule, PulseSpec, Timing, phase_schedule, pulse_list
from src.utils.errors import DomainError

if TYPE_CHECKING:
    from src.simulation.beam_physics import PhysicsConfig

UNITARY_TOL = 1e-12
NORM_TOL = 1e-10
# area for pulse index j given its PulseSpec
AreaModel = Callable[[int, PulseSpec], float]


class TwoLevelState(BaseModel):
    """Amplitude pair; evolve() requires it normalized."""
    model_config = ConfigDict(frozen=True)

    amp_g: complex = Field(..., description="Ground-state amplitude")
    amp_e: complex = Field(..., description="Excited-state amplitude")

    @classmethod
    def ground(cls) -> "TwoLevelState":
        return cls(amp_g=1.0 + 0j, amp_e=0j)

    @classmethod
    def excited(cls) -> "TwoLevelState":
        return cls(amp_g=0j, amp_e=1.0 + 0j)

    @classmethod
    def from_array(cls, vector: np.ndarray) -> "TwoLevelState":
        return cls(amp_g=complex(vector[0]), amp_e=complex(vector[1]))

    @property
    def norm(self) -> float:
        return abs(self.amp_g) ** 2 + abs(self.amp_e) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.amp_g, self.amp_e], dtype=np.complex128)


class PulseUnitary(BaseModel):
    """2x2 rotation matrix entries."""
    model_config = ConfigDict(frozen=True)

    u_gg: complex
    u_ge: complex
    u_eg: complex
    u_ee: complex

    def matrix(self) -> np.ndarray:
        return np.array([[self.u_gg, self.u_ge], [self.u_eg, self.u_ee]], dtype=np.complex128)

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        u = self.matrix()
        return bool(
            np.allclose(u.conj().T @ u, np.eye(2), rtol=0, atol=tol)
            and abs(abs(np.linalg.det(u)) - 1.0) <= tol
        )


def rotation_matrices(areas: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Stack of rotation matrices, shape areas.shape + (2, 2)."""
    areas = np.asarray(areas, dtype=np.float64)
    phases = np.broadcast_to(np.asarray(phases, dtype=np.float64), areas.shape)
    cos = np.cos(areas / 2.0)
    sin = np.sin(areas / 2.0)
    out = np.empty(areas.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = cos
    out[..., 1, 1] = cos
    out[..., 0, 1] = -1j * np.exp(-1j * phases) * sin
    out[..., 1, 0] = -1j * np.exp(1j * phases) * sin
    return out


def pulse_unitary(area: float, phase: float) -> PulseUnitary:
    """Resonant rotation U(theta, phi)."""
    if area < 0:
        raise DomainError(f"pulse area must be >= 0, got {area}")
    u = rotation_matrices(np.array(area), np.array(phase))
    return PulseUnitary(u_gg=u[0, 0], u_ge=u[0, 1], u_eg=u[1, 0], u_ee=u[1, 1])


def evolve(
    state: TwoLevelState,
    schedule: PhaseSchedule | Sequence[PulseSpec],
    area_model: AreaModel | None = None,
    phase_offsets: Sequence[float] | None = None,
) -> TwoLevelState:
    """Apply every pulse of the schedule in order.

    ``area_model(j, pulse)`` replaces pulse j's target area;
    ``phase_offsets[j]`` is added to pulse j's phase (laser phase noise).
    """
    if abs(state.norm - 1.0) > NORM_TOL:
        raise DomainError(f"input state not normalized: norm {state.norm}")
    pulses = pulse_list(schedule)
    if phase_offsets is not None and len(phase_offsets) != len(pulses):
        raise DomainError(f"{len(phase_offsets)} phase offsets for {len(pulses)} pulses")
    vector = state.as_array()
    for j, pulse in enumerate(pulses):
        area = pulse.area_target if area_model is None else area_model(j, pulse)
        phase = pulse.phase_rad if phase_offsets is None else pulse.phase_rad + phase_offsets[j]
        vector = pulse_unitary(area, phase).matrix() @ vector
    return TwoLevelState.from_array(vector)


def evolve_ensemble(areas: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Evolve many atoms from the ground state at once.

    ``areas`` and ``phases`` have shape (atoms, pulses); returns the final
    amplitude vectors, shape (atoms, 2).
    """
    areas = np.atleast_2d(areas)
    phases = np.broadcast_to(phases, areas.shape)
    unitaries = rotation_matrices(areas, phases)
    vectors = np.zeros((areas.shape[0], 2), dtype=np.complex128)
    vectors[:, 0] = 1.0
    for j in range(areas.shape[1]):
        vectors = np.einsum("aij,aj->ai", unitaries[:, j], vectors)
    return vectors


def readout(state: TwoLevelState) -> float:
    """Population difference c = P_e - P_g."""
    return abs(state.amp_e) ** 2 - abs(state.amp_g) ** 2


def readout_vectors(vectors: np.ndarray) -> np.ndarray:
    """P_e - P_g for a stack of amplitude vectors."""
    probabilities = np.abs(vectors) ** 2
    return probabilities[..., 1] - probabilities[..., 0]


def jitter_offsets(seed: int, l: int, m: int, sample: int, n_pulses: int, sigma: float) -> np.ndarray:
    """Gaussian phase noise for one shot.

    Philox is counter based: the draw for pulse k depends only on
    (seed, l, m, sample, k), never on evaluation order.
    """
    key = np.random.SeedSequence([seed, l, m, sample])
    generator = np.random.Generator(np.random.Philox(key))
    return generator.normal(0.0, sigma, size=n_pulses)


def simulate_cm(
    n: int,
    l: int,
    m: int,
    timing: Timing | None = None,
    physics: "PhysicsConfig | None" = None,
) -> float:
    """Readout of the canonical schedule started in the ground state.

    Without a physics model the result equals the closed-form signal.
    With one, the Gaussian-beam ensemble average is returned.
    """
    if physics is not None:
        from src.simulation.beam_physics import ensemble_cm

        return ensemble_cm(n, l, m, physics, timing)
    schedule = phase_schedule(n, l, m, timing)
    return readout(evolve(TwoLevelState.ground(), schedule))


def equal_superposition() -> TwoLevelState:
    """(|g> + |e>) / sqrt(2)."""
    return TwoLevelState(amp_g=complex(1 / math.sqrt(2)), amp_e=complex(1 / math.sqrt(2)))

