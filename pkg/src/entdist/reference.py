"""Hand-derived two-qubit expectation values, kept independent of the engine.

Two routes are provided: the layer-to-layer recurrence over all fifteen
non-identity Pauli expectations of the two-qubit ansatz (any depth), and the
explicitly expanded polynomials for one, two and three layers. Both serve as
fixtures for the back-propagation engine.
"""

from __future__ import annotations

from math import cos, sin
from typing import Sequence

import numpy as np

SINGLE = ("X0", "Y0", "Z0", "X1", "Y1", "Z1")
PAIRS = tuple(f"{a}0{b}1" for a in "XYZ" for b in "XYZ")
LABELS = SINGLE + PAIRS


def pauli_label_to_text(label: str) -> str:
    """``"X0Z1"`` -> ``"X0 Z1"`` for :meth:`PauliString.parse`."""
    return label if len(label) == 2 else f"{label[:2]} {label[2:]}"


def initial_expectations() -> dict[str, float]:
    out = dict.fromkeys(LABELS, 0.0)
    out["Z0"] = out["Z1"] = out["Z0Z1"] = 1.0
    return out


def step(prev: dict[str, float], t0: float, t1: float) -> dict[str, float]:
    """Advance all fifteen expectations through one RY+CZ layer."""
    c0, s0, c1, s1 = cos(t0), sin(t0), cos(t1), sin(t1)
    p = prev
    return {
        "X0": c0 * c1 * p["X0Z1"] - c0 * s1 * p["X0X1"] + s0 * c1 * p["Z0Z1"] - s0 * s1 * p["Z0X1"],
        "Y0": c1 * p["Y0Z1"] - s1 * p["Y0X1"],
        "Z0": c0 * p["Z0"] - s0 * p["X0"],
        "X1": c0 * c1 * p["Z0X1"] + c0 * s1 * p["Z0Z1"] - s0 * c1 * p["X0X1"] - s0 * s1 * p["X0Z1"],
        "Y1": c0 * p["X0Y1"] + s0 * p["Z0Y1"],
        "Z1": c1 * p["Z1"] - s1 * p["X1"],
        "X0X1": p["Y0Y1"],
        "X0Y1": -c1 * p["Y0X1"] - s1 * p["Y0Z1"],
        "X0Z1": c0 * p["X0"] + s0 * p["Z0"],
        "Y0X1": -c0 * p["X0Y1"] - s0 * p["Z0Y1"],
        "Y0Y1": c0 * c1 * p["X0X1"] + c0 * s1 * p["X0Z1"] + s0 * c1 * p["Z0X1"] + s0 * s1 * p["Z0Z1"],
        "Y0Z1": p["Y0"],
        "Z0X1": c1 * p["X1"] + s1 * p["Z1"],
        "Z0Y1": p["Y1"],
        "Z0Z1": c0 * c1 * p["Z0Z1"] - c0 * s1 * p["Z0X1"] - s0 * c1 * p["X0Z1"] + s0 * s1 * p["X0X1"],
    }


def pair_expectations(angles: Sequence[Sequence[float]] | np.ndarray) -> dict[str, float]:
    """Expectations after ``len(angles)`` layers; ``angles[n] = (theta_0, theta_1)``."""
    vals = initial_expectations()
    for t0, t1 in np.asarray(angles, dtype=float).reshape(-1, 2):
        vals = step(vals, float(t0), float(t1))
    return vals


def layer1(t: Sequence[Sequence[float]]) -> dict[str, float]:
    (a, b), = t[:1]
    return {
        "X0": sin(a) * cos(b), "X1": cos(a) * sin(b),
        "Y0": 0.0, "Y1": 0.0,
        "Z0": cos(a), "Z1": cos(b),
        "X0X1": 0.0, "Y0X1": 0.0, "Z0X1": sin(b),
        "X0Y1": 0.0, "Y0Y1": sin(a) * sin(b), "Z0Y1": 0.0,
        "X0Z1": sin(a), "Y0Z1": 0.0, "Z0Z1": cos(a) * cos(b),
    }  # fmt: skip


def layer2(t: Sequence[Sequence[float]]) -> dict[str, float]:
    (a1, b1), (a2, b2) = t[:2]
    s, c = sin, cos
    return {
        "X0": s(a1) * c(a2) * c(b2) + c(a1) * c(b1) * s(a2) * c(b2) - s(b1) * s(a2) * s(b2),
        "Y0": 0.0,
        "Z0": c(a1) * c(a2) - s(a1) * c(b1) * s(a2),
        "X1": s(b1) * c(a2) * c(b2) + c(a1) * c(b1) * c(a2) * s(b2) - s(a1) * s(a2) * s(b2),
        "Y1": 0.0,
        "Z1": c(b1) * c(b2) - c(a1) * s(b1) * s(b2),
        "X0X1": s(a1) * s(b1),
        "X0Y1": 0.0,
        "X0Z1": s(a1) * c(b1) * c(a2) + c(a1) * s(a2),
        "Y0X1": 0.0,
        "Y0Y1": s(a1) * c(a2) * s(b2) + s(b1) * s(a2) * c(b2) + c(a1) * c(b1) * s(a2) * s(b2),
        "Y0Z1": 0.0,
        "Z0X1": c(a1) * s(b1) * c(b2) + c(b1) * s(b2),
        "Z0Y1": 0.0,
        "Z0Z1": c(a1) * c(b1) * c(a2) * c(b2) - s(b1) * c(a2) * s(b2) - s(a1) * s(a2) * c(b2),
    }


def layer3_single(t: Sequence[Sequence[float]]) -> dict[str, float]:
    (a1, b1), (a2, b2), (a3, b3) = t[:3]
    s, c = sin, cos
    return {
        "X0": (s(a1) * c(b1) * c(a2) + c(a1) * s(a2)) * c(a3) * c(b3)
        - s(a1) * s(b1) * c(a3) * s(b3)
        + (c(a1) * c(b1) * c(a2) * c(b2) - s(b1) * c(a2) * s(b2) - s(a1) * s(a2) * c(b2)) * s(a3) * c(b3)
        - (c(a1) * s(b1) * c(b2) + c(b1) * s(b2)) * s(a3) * s(b3),
        "Y0": 0.0,
        "Z0": (c(a1) * c(a2) - s(a1) * c(b1) * s(a2)) * c(a3)
        - (s(a1) * c(a2) * c(b2) + c(a1) * c(b1) * s(a2) * c(b2) - s(b1) * s(a2) * s(b2)) * s(a3),
        "X1": (c(a1) * s(b1) * c(b2) + c(b1) * s(b2)) * c(a3) * c(b3)
        + (c(a1) * c(b1) * c(a2) * c(b2) - s(b1) * c(a2) * s(b2) - s(a1) * s(a2) * c(b2)) * c(a3) * s(b3)
        - s(a1) * s(b1) * s(a3) * c(b3)
        - (s(a1) * c(b1) * c(a2) + c(a1) * s(a2)) * s(a3) * s(b3),
        "Y1": 0.0,
        # the sin(b3) bracket is <X1> after two layers, all three terms of it
        "Z1": (c(b1) * c(b2) - c(a1) * s(b1) * s(b2)) * c(b3)
        - (s(b1) * c(a2) * c(b2) + c(a1) * c(b1) * c(a2) * s(b2) - s(a1) * s(a2) * s(b2)) * s(b3),
    }


def chain_layer1_single(ta: float, t_left: float, t_right: float) -> dict[str, float]:
    return {"X": sin(ta) * cos(t_left) * cos(t_right), "Y": 0.0, "Z": cos(ta)}
