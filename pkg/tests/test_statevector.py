import math

import numpy as np
import pytest

from conftest import random_spec
from entdist import statevector as sv
from entdist.circuit import CircuitSpec
from entdist.pauli import PauliString

H = math.pi / 2


def bell_like():
    return sv.run(CircuitSpec.pair([[H, H]]))


def test_half_turn():
    # qubit 0 is bit 0, so |q1 q0> = |01> sits at index 1
    amps = sv.run(CircuitSpec.pair([[math.pi, 0.0]])).amplitudes
    np.testing.assert_allclose(np.abs(amps), [0, 1, 0, 0], atol=1e-15)


def test_bell_like_amplitudes():
    np.testing.assert_allclose(bell_like().amplitudes, 0.5 * np.array([1, 1, 1, -1]), atol=1e-15)


def test_zero_layers():
    np.testing.assert_array_equal(sv.run(CircuitSpec.closed_chain(3, np.empty((0, 3)))).amplitudes, [1] + [0] * 7)


def test_pauli_expectation_examples():
    assert sv.pauli_expectation(bell_like(), PauliString.parse("Y0 Y1", 2)) == pytest.approx(1.0, abs=1e-12)
    zero = sv.StateVector.zero(3)
    for q in range(3):
        assert sv.pauli_expectation(zero, PauliString.from_map({q: "Z"}, 3)) == 1.0
    assert sv.pauli_expectation(sv.StateVector.zero(2), PauliString.parse("X0 Z1", 2)) == 0.0


def test_y_convention_on_complex_state():
    # |+i> = (|0> + i|1>)/sqrt(2) has <Y> = +1
    state = sv.StateVector(np.array([1, 1j]) / math.sqrt(2), 1)
    assert sv.pauli_expectation(state, PauliString.parse("Y0", 1)) == pytest.approx(1.0)
    assert sv.pauli_expectation(state, PauliString.parse("-Y0", 1)) == pytest.approx(-1.0)


def test_reduced_bloch():
    assert sv.reduced_bloch(sv.StateVector.zero(2), 0) == (0.0, 0.0, 1.0)
    np.testing.assert_allclose(sv.reduced_bloch(bell_like(), 0), (0, 0, 0), atol=1e-15)
    theta = 0.9
    state = sv.run(CircuitSpec.closed_chain(3, [[0.0, theta, 0.0]]))
    np.testing.assert_allclose(sv.reduced_bloch(state, 1), (math.sin(theta), 0, math.cos(theta)), atol=1e-15)


def test_norm_and_reality(rng):
    for _ in range(50):
        spec = random_spec(rng)
        amps = sv.run(spec).amplitudes
        assert abs(np.vdot(amps, amps).real - 1) <= 1e-12
        assert np.max(np.abs(amps.imag)) < 1e-12


def test_gates_preserve_norm(rng):
    n = 4
    amps = rng.normal(size=16) + 1j * rng.normal(size=16)
    amps /= np.linalg.norm(amps)
    for q in range(n):
        amps = sv.apply_ry(amps, n, q, rng.uniform(0, 6))
        assert abs(np.linalg.norm(amps) - 1) <= 1e-12
    again = sv.apply_cz(sv.apply_cz(amps, n, 1, 3), n, 1, 3)
    np.testing.assert_array_equal(again, amps)


def test_dense_guard():
    with pytest.raises(ValueError):
        sv.run(CircuitSpec.closed_chain(25, np.zeros((1, 25))))


def test_probability_zero():
    assert sv.StateVector.zero(2).probability_zero(1) == 1.0
    assert bell_like().probability_zero(0) == pytest.approx(0.5)
