"""Exact Heisenberg-picture simulation and entanglement distance for layered RY+CZ circuits."""

from .circuit import CircuitSpec, SpecError, Topology, TopologyKind, layer_gates, parse_spec, serialize_spec
from .entanglement import (
    ClosedForm,
    EDReport,
    Figure,
    Method,
    closed_form,
    ed_closed_form,
    ed_engine,
    ed_from_bloch,
    ed_two_qubit_identity,
    figure_formula,
    figure_spec,
)
from .heisenberg import BackpropResult, backpropagate, bloch_vector, expectation
from .pauli import PauliFactor, PauliString, PauliSum, conjugate_cz, conjugate_ry, vacuum_expectation
from .sampler import AgreementMetrics, ShotConfig, agreement, estimate_ed, estimate_pauli
from .statevector import StateVector, pauli_expectation, reduced_bloch, run

__version__ = "0.1.0"
