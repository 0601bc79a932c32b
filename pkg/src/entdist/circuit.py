"""Layered RY + CZ ansatz description and its config-file form.

Each layer rotates every qubit with RY, then applies CZ on every edge of the
entangling topology. Angle matrices are indexed ``angles[layer - 1, qubit]``.

Spec document schema (YAML; JSON is accepted since it is a YAML subset)::

    topology: pair | closed_chain
    n_qubits: 5          # must be 2 for pair
    layers: 2
    angles: 0.3          # scalar: every qubit, every layer
    # angles: [0.3, 1.2]                 # one value per layer
    # angles: [[0.1, 0.2, ...], [...]]   # full layers x n_qubits matrix
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

import numpy as np
import yaml


class SpecError(ValueError):
    """Raised for malformed or inconsistent circuit descriptions."""


class TopologyKind(str, enum.Enum):
    PAIR = "pair"
    CLOSED_CHAIN = "closed_chain"


@dataclass(frozen=True)
class Topology:
    kind: TopologyKind
    n_qubits: int

    def __post_init__(self) -> None:
        kind = TopologyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        n = self.n_qubits
        if n < 2:
            raise SpecError(f"need at least 2 qubits, got {n}")
        if kind is TopologyKind.PAIR and n != 2:
            raise SpecError(f"pair topology needs exactly 2 qubits, got {n}")
        if kind is TopologyKind.CLOSED_CHAIN and n < 3:
            # mod-N edges on 2 qubits give CZ twice, i.e. no entangler at all
            raise SpecError("closed_chain needs n_qubits >= 3; use topology 'pair' for 2 qubits")

    @classmethod
    def pair(cls) -> "Topology":
        return cls(TopologyKind.PAIR, 2)

    @classmethod
    def closed_chain(cls, n_qubits: int) -> "Topology":
        return cls(TopologyKind.CLOSED_CHAIN, n_qubits)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self.kind is TopologyKind.PAIR:
            return ((0, 1),)
        n = self.n_qubits
        return tuple((q, (q + 1) % n) for q in range(n))

    def distance(self, a: int, b: int) -> int:
        """Graph distance between two qubits."""
        if self.kind is TopologyKind.PAIR:
            return int(a != b)
        d = abs(a - b) % self.n_qubits
        return min(d, self.n_qubits - d)


class RY(NamedTuple):
    qubit: int
    theta: float


class CZ(NamedTuple):
    control: int
    target: int


Gate = RY | CZ


class CircuitSpec:
    """Topology plus a read-only ``layers x n_qubits`` angle matrix (radians)."""

    __slots__ = ("topology", "angles")

    def __init__(self, topology: Topology, angles: Any) -> None:
        n = topology.n_qubits
        arr = np.array(angles, dtype=np.float64)
        if arr.size == 0:
            arr = arr.reshape(0, n)
        if arr.ndim != 2 or arr.shape[1] != n:
            raise SpecError(f"angles must have shape (layers, {n}), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise SpecError("angles must be finite")
        arr.setflags(write=False)
        self.topology = topology
        self.angles = arr

    @classmethod
    def pair(cls, angles: Any) -> "CircuitSpec":
        return cls(Topology.pair(), angles)

    @classmethod
    def closed_chain(cls, n_qubits: int, angles: Any) -> "CircuitSpec":
        return cls(Topology.closed_chain(n_qubits), angles)

    @property
    def n_qubits(self) -> int:
        return self.topology.n_qubits

    @property
    def layers(self) -> int:
        return int(self.angles.shape[0])

    def with_angles(self, angles: Any) -> "CircuitSpec":
        return CircuitSpec(self.topology, angles)

    def layer_gates(self, layer: int) -> list[Gate]:
        return layer_gates(self, layer)

    def gates(self) -> list[Gate]:
        out: list[Gate] = []
        for n in range(1, self.layers + 1):
            out.extend(layer_gates(self, n))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CircuitSpec):
            return NotImplemented
        return self.topology == other.topology and np.array_equal(self.angles, other.angles)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"CircuitSpec({self.topology.kind.value}, n_qubits={self.n_qubits}, "
            f"layers={self.layers}, angles={self.angles.tolist()})"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "topology": self.topology.kind.value,
            "n_qubits": self.n_qubits,
            "layers": self.layers,
            "angles": self.angles.tolist(),
        }


def layer_gates(spec: CircuitSpec, layer: int) -> list[Gate]:
    """Gates of layer ``layer`` (1-based) in application order."""
    if not 1 <= layer <= spec.layers:
        raise IndexError(f"layer {layer} out of range 1..{spec.layers}")
    row = spec.angles[layer - 1]
    gates: list[Gate] = [RY(q, float(row[q])) for q in range(spec.n_qubits)]
    gates.extend(CZ(i, j) for i, j in spec.topology.edges)
    return gates


def _as_float(v: Any) -> float:
    if isinstance(v, bool):
        raise SpecError(f"angle must be a number, got {v!r}")
    try:
        # PyYAML reads '1e-3' (no dot) as a string
        return float(v)
    except (TypeError, ValueError):
        raise SpecError(f"angle must be a number, got {v!r}") from None


def expand_angles(raw: Any, layers: int, n_qubits: int, convert=_as_float) -> list[list[Any]]:
    """Expand scalar / per-layer / full-matrix angle shorthand to a nested list."""
    if not isinstance(raw, (list, tuple)):
        v = convert(raw)
        return [[v] * n_qubits for _ in range(layers)]
    if len(raw) != layers:
        raise SpecError(f"angles lists {len(raw)} layers, expected {layers}")
    out = []
    for i, row in enumerate(raw):
        if isinstance(row, (list, tuple)):
            if len(row) != n_qubits:
                raise SpecError(f"layer {i + 1} has {len(row)} angles, expected {n_qubits}")
            out.append([convert(v) for v in row])
        else:
            out.append([convert(row)] * n_qubits)
    return out


def parse_header(doc: Any) -> tuple[Topology, int]:
    if not isinstance(doc, dict):
        raise SpecError("circuit spec must be a mapping")
    missing = {"topology", "n_qubits", "layers"} - doc.keys()
    if missing:
        raise SpecError(f"missing keys: {sorted(missing)}")
    try:
        kind = TopologyKind(doc["topology"])
    except ValueError:
        raise SpecError(f"unknown topology {doc['topology']!r}") from None
    n, layers = doc["n_qubits"], doc["layers"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise SpecError(f"n_qubits must be an integer, got {n!r}")
    if not isinstance(layers, int) or isinstance(layers, bool) or layers < 0:
        raise SpecError(f"layers must be a non-negative integer, got {layers!r}")
    return Topology(kind, n), layers


def spec_from_dict(doc: Any) -> CircuitSpec:
    topology, layers = parse_header(doc)
    raw = doc.get("angles", 0.0 if layers == 0 else None)
    if raw is None:
        raise SpecError("missing key: angles")
    angles = expand_angles(raw, layers, topology.n_qubits)
    return CircuitSpec(topology, np.array(angles, dtype=np.float64).reshape(layers, topology.n_qubits))


def parse_spec(text: str) -> CircuitSpec:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SpecError(f"invalid spec document: {exc}") from None
    return spec_from_dict(doc)


def serialize_spec(spec: CircuitSpec) -> str:
    return yaml.safe_dump(spec.to_dict(), sort_keys=False, default_flow_style=None)


def load_spec(path: str) -> CircuitSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def uniform(topology: Topology, per_layer: Sequence[float]) -> CircuitSpec:
    """Spec with one angle shared by all qubits in each layer."""
    n = topology.n_qubits
    return CircuitSpec(topology, [[float(t)] * n for t in per_layer] or np.empty((0, n)))


HALF_PI = math.pi / 2
