"""Dense statevector simulator used as a brute-force oracle.

Qubit ``q`` is bit ``q`` of the basis-state index, so for two qubits the
amplitudes are ordered ``|q1 q0> = |00>, |01>, |10>, |11>`` with ``|01>``
meaning qubit 0 set.
"""

from __future__ import annotations

import numpy as np

from .circuit import CZ, RY, CircuitSpec
from .pauli import PauliFactor, PauliString

MAX_DENSE_QUBITS = 24


class StateVector:
    """Complex amplitudes of an ``n_qubits`` register. Read-only once built."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, amplitudes: np.ndarray, n_qubits: int) -> None:
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.shape != (2**n_qubits,):
            raise ValueError(f"expected {2**n_qubits} amplitudes, got {amps.shape}")
        amps.setflags(write=False)
        self.n_qubits = n_qubits
        self.amplitudes = amps

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps, n_qubits)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probability_zero(self, qubit: int) -> float:
        """Probability that measuring ``qubit`` gives 0."""
        _check(qubit, self.n_qubits)
        probs = np.abs(self.amplitudes) ** 2
        idx = np.arange(probs.size)
        return float(np.sum(probs[((idx >> qubit) & 1) == 0]))


def _check(q: int, n: int) -> None:
    if not 0 <= q < n:
        raise IndexError(f"qubit {q} out of range for {n} qubits")


def _axis(qubit: int, n: int) -> int:
    # C-order reshape to (2,)*n puts the most significant bit first
    return n - 1 - qubit


def apply_1q(amps: np.ndarray, n: int, qubit: int, u: np.ndarray) -> np.ndarray:
    """Apply a 2x2 matrix to ``qubit``; returns a new flat array."""
    psi = amps.reshape((2,) * n)
    psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [_axis(qubit, n)])), 0, _axis(qubit, n))
    return np.ascontiguousarray(psi).reshape(-1)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def apply_ry(amps: np.ndarray, n: int, qubit: int, theta: float) -> np.ndarray:
    return apply_1q(amps, n, qubit, ry_matrix(theta))


def apply_cz(amps: np.ndarray, n: int, i: int, j: int) -> np.ndarray:
    idx = np.arange(amps.size)
    both = ((idx >> i) & 1) & ((idx >> j) & 1)
    out = amps.copy()
    out[both.astype(bool)] *= -1
    return out


def run(spec: CircuitSpec) -> StateVector:
    n = spec.n_qubits
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense simulation limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = 1.0
    for gate in spec.gates():
        if isinstance(gate, RY):
            amps = apply_ry(amps, n, gate.qubit, gate.theta)
        else:
            assert isinstance(gate, CZ)
            amps = apply_cz(amps, n, gate.control, gate.target)
    return StateVector(amps, n)


def apply_pauli(amps: np.ndarray, n: int, observable: PauliString) -> np.ndarray:
    idx = np.arange(amps.size)
    out = amps.astype(np.complex128, copy=True)
    for q, f in observable.factors:
        bit = (idx >> q) & 1
        if f is PauliFactor.X:
            out = out[idx ^ (1 << q)]
        elif f is PauliFactor.Y:
            # Y|0> = i|1>, Y|1> = -i|0>
            out = out[idx ^ (1 << q)] * np.where(bit == 1, 1j, -1j)
        elif f is PauliFactor.Z:
            out = out * np.where(bit == 1, -1.0, 1.0)
    return out * observable.sign


def pauli_expectation(state: StateVector, observable: PauliString) -> float:
    if observable.n_qubits != state.n_qubits:
        raise ValueError("observable and state have different qubit counts")
    val = np.vdot(state.amplitudes, apply_pauli(state.amplitudes, state.n_qubits, observable))
    return float(val.real)


def reduced_bloch(state: StateVector, qubit: int) -> tuple[float, float, float]:
    _check(qubit, state.n_qubits)
    n = state.n_qubits
    return tuple(  # type: ignore[return-value]
        pauli_expectation(state, PauliString.from_map({qubit: f}, n)) for f in "XYZ"
    )
