"""Finite-shot estimation of single-qubit Pauli expectations and of ED.

Measurement is emulated on the exact statevector: the measured qubit is
rotated into the Z basis, the exact probability ``p`` of reading 0 is
computed, and the number of zeros is drawn from ``Binomial(shots, p)``.
The estimate is ``2k/shots - 1``.

Basis changes:

* X: ``RY(-pi/2)`` on the measured qubit (maps X to Z).
* Y: ``S^dagger`` followed by ``H`` (maps Y to Z).
* Z: none.

Every draw uses its own PCG64 generator seeded through
``numpy.random.SeedSequence([seed, basis, index])``, where ``basis`` is
0/1/2 for X/Y/Z and ``index`` identifies the grid point. Grids are
therefore reproducible and independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import statevector as sv
from .circuit import CircuitSpec
from .entanglement import EDReport, Method, ed_from_bloch
from .pauli import PauliFactor, PauliString

DEFAULT_SHOTS = 1024
DEFAULT_SEED = 20240917

_BASIS_TAG = {PauliFactor.X: 0, PauliFactor.Y: 1, PauliFactor.Z: 2}

_SDG = np.diag([1.0, -1j])
_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
_BASIS_CHANGE = {
    PauliFactor.X: sv.ry_matrix(-math.pi / 2),
    PauliFactor.Y: _H @ _SDG,
}


@dataclass(frozen=True)
class ShotConfig:
    shots: int = DEFAULT_SHOTS
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if int(self.shots) < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class AgreementMetrics:
    mae: float
    rmse: float
    pearson: float | None  # None when either grid is constant


def generator(seed: int, basis: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), basis, int(index)])))


def _single_qubit(observable: PauliString) -> tuple[int, PauliFactor]:
    if len(observable.factors) != 1 or observable.sign != 1:
        raise ValueError(f"sampler only estimates single-qubit Paulis, got {observable}")
    return observable.factors[0]


def probability_zero(state: sv.StateVector, qubit: int, basis: PauliFactor) -> float:
    """Exact probability of reading 0 on ``qubit`` after the basis change."""
    amps = state.amplitudes
    if basis in _BASIS_CHANGE:
        amps = sv.apply_1q(amps, state.n_qubits, qubit, _BASIS_CHANGE[basis])
    probs = np.abs(amps) ** 2
    idx = np.arange(probs.size)
    return min(max(float(probs[((idx >> qubit) & 1) == 0].sum()), 0.0), 1.0)


def _draw(p: float, shots: int, rng: np.random.Generator) -> float:
    k = int(rng.binomial(shots, p))
    return 2.0 * k / shots - 1.0


def estimate_pauli(
    spec: CircuitSpec,
    observable: PauliString,
    cfg: ShotConfig = ShotConfig(),
    *,
    index: int = 0,
    state: sv.StateVector | None = None,
) -> float:
    qubit, basis = _single_qubit(observable)
    state = sv.run(spec) if state is None else state
    p = probability_zero(state, qubit, basis)
    return _draw(p, cfg.shots, generator(cfg.seed, _BASIS_TAG[basis], index))


def estimate_ed(spec: CircuitSpec, qubit: int, cfg: ShotConfig = ShotConfig(), *, index: int = 0) -> EDReport:
    if not 0 <= qubit < spec.n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {spec.n_qubits} qubits")
    state = sv.run(spec)
    bloch = tuple(
        estimate_pauli(spec, PauliString.from_map({qubit: f}, spec.n_qubits), cfg, index=index, state=state)
        for f in "XYZ"
    )
    return EDReport(
        qubit,
        spec.layers,
        bloch,  # type: ignore[arg-type]
        ed_from_bloch(*bloch, strict=False),
        Method.SAMPLED,
        shots=cfg.shots,
        seed=cfg.seed,
    )


def agreement(analytic: Sequence[float] | np.ndarray, sampled: Sequence[float] | np.ndarray) -> AgreementMetrics:
    a = np.asarray(analytic, dtype=float)
    s = np.asarray(sampled, dtype=float)
    if a.shape != s.shape:
        raise ValueError(f"grid shapes differ: {a.shape} vs {s.shape}")
    if a.size == 0:
        raise ValueError("grids are empty")
    a, s = a.ravel(), s.ravel()
    d = a - s
    mae = float(np.mean(np.abs(d)))
    rmse = float(math.sqrt(np.mean(d * d)))
    da, ds = a - a.mean(), s - s.mean()
    denom = math.sqrt(float(np.dot(da, da)) * float(np.dot(ds, ds)))
    pearson = None if denom == 0.0 else max(-1.0, min(1.0, float(np.dot(da, ds)) / denom))
    return AgreementMetrics(mae, rmse, pearson)
