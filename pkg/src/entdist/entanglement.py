"""Entanglement distance of one qubit with the rest of the register.

``ED = 1 - <X>^2 - <Y>^2 - <Z>^2`` over the qubit's Bloch vector. Besides the
engine route, this module carries the closed-form expressions for the
two-qubit ansatz (one and two layers), the closed chain (one and two layers)
and the fixed-angle surfaces used for figure reproduction. The closed forms
are written out term by term and never call the engine, so comparing them
against it is a genuine cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Mapping, Sequence

from . import heisenberg
from .circuit import CircuitSpec, Topology, TopologyKind
from .pauli import PauliString

NORM_TOL = 1e-10

sin, cos = math.sin, math.cos


class Method(str, enum.Enum):
    ENGINE = "engine"
    CLOSED_FORM = "closed_form"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class EDReport:
    qubit: int
    depth: int
    bloch: tuple[float, float, float]
    value: float
    method: Method
    shots: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bloch"] = list(self.bloch)
        d["method"] = self.method.value
        if self.shots is None:
            del d["shots"], d["seed"]
        return d


def ed_from_bloch(x: float, y: float, z: float, *, strict: bool = True) -> float:
    """``1 - |r|^2`` clamped to [0, 1].

    With ``strict`` (the default) a Bloch norm above ``1 + 1e-10`` raises, since
    exact inputs can only get there through a bug. Sampled estimates pass
    ``strict=False`` because shot noise routinely pushes the norm past 1.
    """
    value = 1.0 - x * x - y * y - z * z
    if strict and value < -NORM_TOL:
        raise ValueError(f"Bloch vector ({x}, {y}, {z}) has norm^2 {1 - value} > 1")
    return min(max(value, 0.0), 1.0)


def _check_qubit(spec: CircuitSpec, qubit: int) -> None:
    if not 0 <= qubit < spec.n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {spec.n_qubits} qubits")


def ed_engine(spec: CircuitSpec, qubit: int) -> EDReport:
    _check_qubit(spec, qubit)
    bloch = heisenberg.bloch_vector(spec, qubit)
    return EDReport(qubit, spec.layers, bloch, ed_from_bloch(*bloch), Method.ENGINE)


def ed_two_qubit_identity(spec: CircuitSpec) -> float:
    """Two-qubit ED via the squared ``<Y0 Y1>`` correlator."""
    if spec.topology.kind is not TopologyKind.PAIR:
        raise ValueError("the <Y0 Y1>^2 identity only holds for the two-qubit pair topology")
    yy = heisenberg.expectation(spec, PauliString.parse("Y0 Y1", 2))
    return yy * yy


# -- closed forms -------------------------------------------------------------


class ClosedForm(str, enum.Enum):
    PAIR_LAYER1 = "pair_layer1"
    PAIR_LAYER2 = "pair_layer2"
    CHAIN_LAYER1 = "chain_layer1"
    CHAIN_LAYER2 = "chain_layer2"


_OFFSETS = {-2: "am2", -1: "am1", 0: "a", 1: "ap1", 2: "ap2"}

#: Angle names each closed form expects. ``q0_l2`` is qubit 0 in layer 2;
#: ``am1_l1`` is the left neighbour of the target in layer 1, ``ap2`` the
#: second neighbour on the right, and so on.
FORM_ANGLES: dict[ClosedForm, tuple[str, ...]] = {
    ClosedForm.PAIR_LAYER1: ("q0_l1", "q1_l1"),
    ClosedForm.PAIR_LAYER2: ("q0_l1", "q1_l1", "q0_l2", "q1_l2"),
    ClosedForm.CHAIN_LAYER1: ("a_l1", "am1_l1", "ap1_l1"),
    ClosedForm.CHAIN_LAYER2: tuple(f"{_OFFSETS[k]}_l{n}" for n in (1, 2) for k in range(-2, 3)),
}


def ed_pair_layer1(t0: float, t1: float) -> float:
    return sin(t0) ** 2 * sin(t1) ** 2


def ed_pair_layer2(t0_1: float, t1_1: float, t0_2: float, t1_2: float) -> float:
    yy = (
        sin(t0_1) * cos(t0_2) * sin(t1_2)
        + cos(t0_1) * cos(t1_1) * sin(t0_2) * sin(t1_2)
        + sin(t1_1) * sin(t0_2) * cos(t1_2)
    )
    return yy * yy


def ed_chain_layer1(ta: float, t_left: float, t_right: float) -> float:
    return sin(ta) ** 2 * (1.0 - cos(t_left) ** 2 * cos(t_right) ** 2)


def chain_layer2_bloch(w1: Sequence[float], w2: Sequence[float]) -> tuple[float, float]:
    """``(<X_a>, <Z_a>)`` after two chain layers.

    ``w1`` and ``w2`` hold the layer-1 and layer-2 angles of sites
    ``a-2, a-1, a, a+1, a+2`` in that order.
    """
    s1 = [sin(t) for t in w1]
    c1 = [cos(t) for t in w1]
    s2 = [sin(t) for t in w2]
    c2 = [cos(t) for t in w2]
    L2, L1, A, R1, R2 = range(5)
    x = s1[A] * c2[A] * c2[R1] * c2[L1] + s2[A] * (
        c1[A] * c1[R1] * c2[R1] * c1[L1] * c2[L1]
        - s1[R1] * s2[R1] * c1[R2] * c1[L1] * c2[L1]
        - s1[L1] * s2[L1] * c1[R1] * c2[R1] * c1[L2]
        + s1[R1] * s2[R1] * s1[L1] * s2[L1] * c1[A] * c1[R2] * c1[L2]
    )
    z = c1[A] * c2[A] - s1[A] * s2[A] * c1[R1] * c1[L1]
    return x, z


def ed_chain_layer2(w1: Sequence[float], w2: Sequence[float]) -> float:
    if len(w1) != 5 or len(w2) != 5:
        raise ValueError("chain layer-2 form needs 5 angles per layer (sites a-2..a+2)")
    x, z = chain_layer2_bloch(w1, w2)
    return 1.0 - x * x - z * z


def closed_form(form: ClosedForm | str, angles: Mapping[str, float], *, distinct_sites: bool = True) -> float:
    """Evaluate a closed-form ED from a named angle set (see :data:`FORM_ANGLES`).

    ``distinct_sites`` must stay true for the two-layer chain form: it assumes
    sites ``a-2..a+2`` are five different qubits, which needs ``N >= 5``.
    """
    form = ClosedForm(form)
    expected = FORM_ANGLES[form]
    if set(angles) != set(expected):
        raise ValueError(f"{form.value} expects angles {list(expected)}, got {sorted(angles)}")
    a = {k: float(v) for k, v in angles.items()}
    if form is ClosedForm.PAIR_LAYER1:
        return ed_pair_layer1(a["q0_l1"], a["q1_l1"])
    if form is ClosedForm.PAIR_LAYER2:
        return ed_pair_layer2(a["q0_l1"], a["q1_l1"], a["q0_l2"], a["q1_l2"])
    if form is ClosedForm.CHAIN_LAYER1:
        return ed_chain_layer1(a["a_l1"], a["am1_l1"], a["ap1_l1"])
    if not distinct_sites:
        raise ValueError("chain_layer2 is only valid when sites a-2..a+2 are distinct (N >= 5)")
    w = [[a[f"{_OFFSETS[k]}_l{n}"] for k in range(-2, 3)] for n in (1, 2)]
    return ed_chain_layer2(w[0], w[1])


def form_for_spec(spec: CircuitSpec, qubit: int) -> tuple[ClosedForm, dict[str, float]]:
    """Pick the closed form matching ``spec`` and extract its named angles."""
    _check_qubit(spec, qubit)
    kind, layers, n = spec.topology.kind, spec.layers, spec.n_qubits
    th = spec.angles
    if kind is TopologyKind.PAIR and layers in (1, 2):
        form = ClosedForm.PAIR_LAYER1 if layers == 1 else ClosedForm.PAIR_LAYER2
        names = FORM_ANGLES[form]
        vals = [th[l, q] for l in range(layers) for q in range(2)]
        return form, dict(zip(names, map(float, vals)))
    if kind is TopologyKind.CLOSED_CHAIN and layers == 1:
        return ClosedForm.CHAIN_LAYER1, {
            "a_l1": float(th[0, qubit]),
            "am1_l1": float(th[0, (qubit - 1) % n]),
            "ap1_l1": float(th[0, (qubit + 1) % n]),
        }
    if kind is TopologyKind.CLOSED_CHAIN and layers == 2:
        if n < 5:
            raise ValueError("no closed form for two chain layers with fewer than 5 qubits")
        return ClosedForm.CHAIN_LAYER2, {
            f"{_OFFSETS[k]}_l{l + 1}": float(th[l, (qubit + k) % n]) for l in (0, 1) for k in range(-2, 3)
        }
    raise ValueError(f"no closed form for {kind.value} with {layers} layers")


def _clamp(value: float) -> float:
    if value < -NORM_TOL or value > 1.0 + NORM_TOL:
        raise ValueError(f"closed-form ED {value} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def ed_closed_form(spec: CircuitSpec, qubit: int) -> EDReport:
    """Closed-form ED for ``spec``, with the matching closed-form Bloch vector."""
    form, angles = form_for_spec(spec, qubit)
    value = _clamp(closed_form(form, angles))
    if form is ClosedForm.CHAIN_LAYER2:
        w = [[angles[f"{_OFFSETS[k]}_l{n}"] for k in range(-2, 3)] for n in (1, 2)]
        x, z = chain_layer2_bloch(w[0], w[1])
        bloch = (x, 0.0, z)
    elif form is ClosedForm.CHAIN_LAYER1:
        ta, tl, tr = angles["a_l1"], angles["am1_l1"], angles["ap1_l1"]
        bloch = (sin(ta) * cos(tl) * cos(tr), 0.0, cos(ta))
    else:
        bloch = _pair_bloch(spec, qubit)
    return EDReport(qubit, spec.layers, bloch, value, Method.CLOSED_FORM)


def _pair_bloch(spec: CircuitSpec, qubit: int) -> tuple[float, float, float]:
    from .reference import pair_expectations

    vals = pair_expectations(spec.angles)
    return (vals[f"X{qubit}"], 0.0, vals[f"Z{qubit}"])


# -- figure surfaces ----------------------------------------------------------


class Figure(str, enum.Enum):
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"
    FIG6 = "fig6"
    FIG7 = "fig7"


#: Names of the two swept angles per figure, in (a, b) order.
FIGURE_AXES: dict[Figure, tuple[str, str]] = {
    Figure.FIG2: ("theta2", "theta3"),
    Figure.FIG3: ("theta1", "theta3"),
    Figure.FIG4: ("theta1", "theta2"),
    Figure.FIG6: ("theta1", "theta2"),
    Figure.FIG7: ("theta_a", "theta_env"),
}

CHAIN_N = 5
CHAIN_TARGET = 2


def _fig2(t0_2, t1_2, t0_3, t1_3):
    return (cos(t0_3) * cos(t1_3) - (cos(t0_2) * sin(t1_2) + sin(t0_2) * cos(t1_2)) * sin(t0_3) * sin(t1_3)) ** 2


def _fig3(t0_1, t1_1, t0_3, t1_3):
    return (
        sin(t0_1) * sin(t1_1) * cos(t0_3) * cos(t1_3)
        + cos(t0_1) * cos(t0_3) * sin(t1_3)
        + cos(t1_1) * sin(t0_3) * cos(t1_3)
    ) ** 2


def _fig4(t0_1, t1_1, t0_2, t1_2):
    return (
        cos(t0_1) * cos(t1_1) * cos(t0_2) * cos(t1_2)
        - sin(t1_1) * cos(t0_2) * sin(t1_2)
        - sin(t0_1) * sin(t0_2) * cos(t1_2)
    ) ** 2


def _fig6(t1, t2):
    x = sin(t1) * cos(t2) ** 3 + sin(t2) * (
        cos(t1) ** 3 * cos(t2) ** 2
        - 2 * sin(t1) * cos(t1) ** 2 * sin(t2) * cos(t2)
        + sin(t1) ** 2 * cos(t1) ** 3 * sin(t2) ** 2
    )
    z = cos(t1) * cos(t2) - sin(t1) * cos(t1) ** 2 * sin(t2)
    return 1 - x**2 - z**2


def _fig7(ta, t):
    x = sin(ta) * cos(ta) * cos(t) ** 2 + sin(ta) * (
        cos(ta) * cos(t) ** 4 - 2 * sin(t) ** 2 * cos(t) ** 3 + sin(t) ** 4 * cos(ta) * cos(t) ** 2
    )
    z = cos(ta) ** 2 - sin(ta) ** 2 * cos(t) ** 2
    return 1 - x**2 - z**2


def figure_formula(figure: Figure | str, a: float, b: float) -> float:
    """Closed-form surface of ``figure`` at swept angles ``(a, b)``.

    Figures 2-4 are the three-layer two-qubit circuit with one layer pinned at
    pi/2 and the other two layers swept, each layer's angle shared by both
    qubits. Figures 6 and 7 are the two-layer five-qubit chain seen from the
    centre qubit: per-layer uniform angles (fig6), or the target at ``a`` and
    all other qubits at ``b`` in both layers (fig7).
    """
    figure = Figure(figure)
    if figure is Figure.FIG2:
        return _fig2(a, a, b, b)
    if figure is Figure.FIG3:
        return _fig3(a, a, b, b)
    if figure is Figure.FIG4:
        return _fig4(a, a, b, b)
    if figure is Figure.FIG6:
        return _fig6(a, b)
    return _fig7(a, b)


def figure_spec(figure: Figure | str, a: float, b: float) -> tuple[CircuitSpec, int]:
    """Fully specified circuit and target qubit behind ``figure_formula``."""
    figure = Figure(figure)
    h = math.pi / 2
    if figure in (Figure.FIG2, Figure.FIG3, Figure.FIG4):
        per_layer = {Figure.FIG2: (h, a, b), Figure.FIG3: (a, h, b), Figure.FIG4: (a, b, h)}[figure]
        return CircuitSpec.pair([[t, t] for t in per_layer]), 0
    topo = Topology.closed_chain(CHAIN_N)
    if figure is Figure.FIG6:
        return CircuitSpec(topo, [[a] * CHAIN_N, [b] * CHAIN_N]), CHAIN_TARGET
    row = [b] * CHAIN_N
    row[CHAIN_TARGET] = a
    return CircuitSpec(topo, [row, row]), CHAIN_TARGET
