"""Test the two-level pulse simulation."""
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy.linalg import expm

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.gauss_core.schedule import PulseSpec, phase_schedule  # noqa: E402
from src.gauss_core.signals import interference_signal_ideal  # noqa: E402
from src.simulation.pulse_sim import (  # noqa: E402
    TwoLevelState,
    equal_superposition,
    evolve,
    evolve_ensemble,
    jitter_offsets,
    pulse_unitary,
    readout,
    readout_vectors,
    simulate_cm,
)
from src.utils.errors import DomainError  # noqa: E402

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def expm_oracle(area: float, phase: float) -> np.ndarray:
    """exp(-i area/2 (cos phi sx + sin phi sy))."""
    return expm(-0.5j * area * (math.cos(phase) * SIGMA_X + math.sin(phase) * SIGMA_Y))


@pytest.mark.unit
def test_zero_area_is_identity():
    for phase in (0.0, 1.0, -2.5):
        assert np.allclose(pulse_unitary(0.0, phase).matrix(), np.eye(2), atol=1e-15)


@pytest.mark.unit
def test_pi_pulse_on_ground():
    u = pulse_unitary(math.pi, 0.0).matrix()
    out = u @ np.array([1, 0], dtype=complex)
    assert out[0] == pytest.approx(0, abs=1e-15)
    assert out[1] == pytest.approx(-1j, abs=1e-15)


@pytest.mark.unit
def test_half_pulse_at_minus_ninety():
    state = evolve(
        TwoLevelState.ground(),
        [PulseSpec.build("initial", math.pi / 2, Fraction(-1, 2), 0.0, 11.5)],
    )
    assert state.amp_g == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert state.amp_e == pytest.approx(-1 / math.sqrt(2), abs=1e-15)


@pytest.mark.unit
def test_unitary_matches_matrix_exponential():
    rng = random.Random(1)
    for _ in range(200):
        area = rng.uniform(0, 4 * math.pi)
        phase = rng.uniform(-math.pi, 3 * math.pi)
        assert np.allclose(pulse_unitary(area, phase).matrix(), expm_oracle(area, phase), atol=1e-12)


@pytest.mark.unit
def test_negative_area_rejected():
    with pytest.raises(DomainError):
        pulse_unitary(-0.1, 0.0)


@pytest.mark.unit
def test_two_half_pulses_compose_to_pi_pulse():
    for phase in (0.0, 0.3, math.pi, 4.0):
        half = pulse_unitary(math.pi / 2, phase).matrix()
        full = pulse_unitary(math.pi, phase).matrix()
        assert np.allclose(half @ half, full, atol=1e-12)


@pytest.mark.unit
def test_evolve_empty_schedule():
    state = equal_superposition()
    assert evolve(state, []) == state


@pytest.mark.unit
def test_evolve_rejects_unnormalized_state():
    with pytest.raises(DomainError):
        evolve(TwoLevelState(amp_g=1 + 0j, amp_e=1 + 0j), [])


@pytest.mark.unit
def test_evolve_rejects_wrong_offset_count(canonical_n):
    schedule = phase_schedule(canonical_n, 151, 3)
    with pytest.raises(DomainError):
        evolve(TwoLevelState.ground(), schedule, phase_offsets=[0.0, 0.1])


@pytest.mark.unit
def test_readout_examples():
    assert readout(TwoLevelState.excited()) == 1.0
    assert readout(TwoLevelState.ground()) == -1.0
    assert readout(equal_superposition()) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.unit
def test_canonical_examples(canonical_n):
    assert simulate_cm(canonical_n, 151, 0) == pytest.approx(1.0, abs=1e-9)
    assert simulate_cm(canonical_n, 151, 7) == pytest.approx(1.0, abs=1e-9)
    assert simulate_cm(105, 2, 1) == pytest.approx(-1.0, abs=1e-9)
    for m in range(15):
        assert simulate_cm(canonical_n, 150, m) == pytest.approx(
            interference_signal_ideal(canonical_n, 150, m), abs=1e-9
        )


@pytest.mark.unit
def test_area_model_overrides_targets(canonical_n):
    schedule = phase_schedule(canonical_n, 151, 2)
    # all areas zero: the state never leaves the ground state
    state = evolve(TwoLevelState.ground(), schedule, area_model=lambda j, pulse: 0.0)
    assert readout(state) == pytest.approx(-1.0, abs=1e-15)


@pytest.mark.unit
def test_offset_on_every_pulse_is_invisible(canonical_n):
    rng = random.Random(8)
    for _ in range(50):
        l = rng.randint(2, 300)
        m = rng.randint(0, 15)
        delta = rng.uniform(-math.pi, math.pi)
        schedule = phase_schedule(canonical_n, l, m)
        shifted = evolve(TwoLevelState.ground(), schedule, phase_offsets=[delta] * (m + 3))
        assert readout(shifted) == pytest.approx(interference_signal_ideal(canonical_n, l, m), abs=1e-9)


@pytest.mark.unit
def test_offset_on_pi_pulses_cancels_for_even_pulse_count(canonical_n):
    rng = random.Random(9)
    for _ in range(50):
        l = rng.randint(2, 300)
        m = 2 * rng.randint(0, 7) + 1
        delta = rng.uniform(-math.pi, math.pi)
        offsets = [0.0] + [delta] * (m + 1) + [0.0]
        shifted = evolve(TwoLevelState.ground(), phase_schedule(canonical_n, l, m), phase_offsets=offsets)
        assert readout(shifted) == pytest.approx(interference_signal_ideal(canonical_n, l, m), abs=1e-9)


@pytest.mark.unit
def test_offset_on_single_pi_pulse_rotates_the_echo(canonical_n):
    """One pi-pulse shifted by delta reflects the spin about a turned axis: c = cos(2 delta)."""
    delta = 0.3
    offsets = [0.0, delta, 0.0]
    shifted = evolve(TwoLevelState.ground(), phase_schedule(canonical_n, 151, 0), phase_offsets=offsets)
    assert readout(shifted) == pytest.approx(math.cos(2 * delta), abs=1e-12)


@pytest.mark.unit
def test_long_sequence_preserves_norm():
    rng = random.Random(4)
    pulses = [
        PulseSpec.build(k, rng.uniform(0, 2 * math.pi), 0, 0.0, 1.0) for k in range(1000)
    ]
    offsets = [rng.uniform(0, 2 * math.pi) for _ in pulses]
    state = evolve(TwoLevelState.ground(), pulses, phase_offsets=offsets)
    assert abs(state.norm - 1.0) < 1e-12


@pytest.mark.unit
def test_ensemble_matches_single_atom_loop(canonical_n):
    schedule = phase_schedule(canonical_n, 97, 6)
    rng = np.random.default_rng(3)
    areas = rng.uniform(0.8, 1.2, size=(5, len(schedule.pulses))) * np.array(
        [p.area_target for p in schedule.pulses]
    )
    phases = np.array([p.phase_rad for p in schedule.pulses])
    batched = readout_vectors(evolve_ensemble(areas, phases))
    for atom in range(5):
        state = evolve(
            TwoLevelState.ground(), schedule, area_model=lambda j, pulse: float(areas[atom, j])
        )
        assert batched[atom] == pytest.approx(readout(state), abs=1e-12)


@pytest.mark.unit
def test_jitter_is_keyed_not_sequential():
    a = jitter_offsets(0, 150, 4, 2, 7, 1e-3)
    b = jitter_offsets(0, 150, 4, 2, 7, 1e-3)
    c = jitter_offsets(0, 150, 4, 3, 7, 1e-3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.abs(a).max() < 1e-2
