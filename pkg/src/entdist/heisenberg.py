"""Heisenberg-picture back-propagation of Pauli observables through the ansatz.

The observable is conjugated layer by layer from the last layer to the
first (CZ edges, then RY rotations) and finally evaluated on ``|0...0>``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import CircuitSpec
from .pauli import PauliString, PauliSum, conjugate_cz_sum, conjugate_ry, vacuum_expectation


@dataclass(frozen=True)
class BackpropResult:
    evolved: PauliSum
    term_counts: tuple[int, ...]  # after each layer, in propagation order (layer L first)


def _check_observable(spec: CircuitSpec, observable: PauliString) -> None:
    if observable.n_qubits != spec.n_qubits:
        raise ValueError(
            f"observable is on {observable.n_qubits} qubits, circuit has {spec.n_qubits}"
        )


def backpropagate(spec: CircuitSpec, observable: PauliString, *, prune: float = 0.0) -> BackpropResult:
    """Conjugate ``observable`` back through every layer of ``spec``.

    ``prune`` drops terms whose magnitude falls below it after each rotation.
    It defaults to 0 (exact up to the 1e-15 merge floor).
    """
    _check_observable(spec, observable)
    current = PauliSum.from_string(observable)
    counts = []
    for layer in range(spec.layers, 0, -1):
        for i, j in spec.topology.edges:
            current = conjugate_cz_sum(current, i, j)
        for q, theta in enumerate(spec.angles[layer - 1]):
            current = conjugate_ry(current, q, float(theta), prune=prune)
        counts.append(len(current))
    return BackpropResult(current, tuple(counts))


def expectation(spec: CircuitSpec, observable: PauliString, *, prune: float = 0.0) -> float:
    return vacuum_expectation(backpropagate(spec, observable, prune=prune).evolved)


def bloch_vector(spec: CircuitSpec, qubit: int) -> tuple[float, float, float]:
    n = spec.n_qubits
    return tuple(  # type: ignore[return-value]
        expectation(spec, PauliString.from_map({qubit: f}, n)) for f in "XYZ"
    )
