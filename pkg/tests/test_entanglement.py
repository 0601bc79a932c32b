import math

import numpy as np
import pytest

from conftest import random_spec
from entdist import entanglement as ent
from entdist import statevector as sv
from entdist.circuit import CircuitSpec

H = math.pi / 2
Q = math.pi / 4


def oracle_ed(spec, qubit):
    return ent.ed_from_bloch(*sv.reduced_bloch(sv.run(spec), qubit))


@pytest.mark.parametrize("bloch, expected", [((0, 0, 1), 0.0), ((0, 0, 0), 1.0), ((0.5, 0, 0.5), 0.5)])
def test_ed_from_bloch(bloch, expected):
    assert ent.ed_from_bloch(*bloch) == expected


def test_ed_from_bloch_clamping():
    assert ent.ed_from_bloch(0, 0, 1 + 4e-11) == 0.0
    with pytest.raises(ValueError):
        ent.ed_from_bloch(0.8, 0, 0.8)
    assert ent.ed_from_bloch(0.8, 0, 0.8, strict=False) == 0.0


def test_ed_engine_examples():
    assert ent.ed_engine(CircuitSpec.pair([[H, H]]), 0).value == pytest.approx(1.0, abs=1e-12)
    assert ent.ed_engine(CircuitSpec.pair([[0.0, 1.234]]), 1).value == pytest.approx(0.0, abs=1e-12)
    report = ent.ed_engine(CircuitSpec.closed_chain(5, [[Q] * 5]), 2)
    assert report.value == pytest.approx(0.375, abs=1e-12)
    assert report.method is ent.Method.ENGINE and report.depth == 1


def test_ed_two_qubit_identity_examples():
    assert ent.ed_two_qubit_identity(CircuitSpec.pair([[H, H]])) == pytest.approx(1.0, abs=1e-12)
    assert ent.ed_two_qubit_identity(CircuitSpec.pair([[math.pi / 3, H]])) == pytest.approx(0.75, abs=1e-12)
    assert ent.ed_two_qubit_identity(CircuitSpec.pair(np.empty((0, 2)))) == 0.0
    with pytest.raises(ValueError):
        ent.ed_two_qubit_identity(CircuitSpec.closed_chain(3, [[0.1] * 3]))


def test_closed_form_examples():
    assert ent.closed_form("pair_layer1", {"q0_l1": H, "q1_l1": H}) == pytest.approx(1.0)
    assert ent.closed_form("chain_layer1", {"a_l1": H, "am1_l1": H, "ap1_l1": H}) == pytest.approx(1.0)
    zeros = dict.fromkeys(ent.FORM_ANGLES[ent.ClosedForm.CHAIN_LAYER2], 0.0)
    assert ent.closed_form("chain_layer2", zeros) == pytest.approx(0.0, abs=1e-15)
    angles = {"q0_l1": H, "q1_l1": 0.8, "q0_l2": 0.0, "q1_l2": 0.0}
    assert ent.closed_form("pair_layer2", angles) == pytest.approx(0.0, abs=1e-15)
    assert oracle_ed(CircuitSpec.pair([[H, 0.8], [0.0, 0.0]]), 0) == pytest.approx(0.0, abs=1e-12)


def test_closed_form_errors():
    with pytest.raises(ValueError):
        ent.closed_form("pair_layer1", {"q0_l1": 0.1})
    zeros = dict.fromkeys(ent.FORM_ANGLES[ent.ClosedForm.CHAIN_LAYER2], 0.0)
    with pytest.raises(ValueError):
        ent.closed_form("chain_layer2", zeros, distinct_sites=False)
    with pytest.raises(ValueError):
        ent.form_for_spec(CircuitSpec.closed_chain(4, np.zeros((2, 4))), 0)
    with pytest.raises(ValueError):
        ent.form_for_spec(CircuitSpec.pair(np.zeros((3, 2))), 0)


def test_closed_forms_vs_engine(rng):
    for _ in range(30):
        t = rng.uniform(0, 2 * math.pi, (2, 2))
        for layers in (1, 2):
            spec = CircuitSpec.pair(t[:layers])
            assert abs(ent.ed_closed_form(spec, 0).value - ent.ed_engine(spec, 0).value) <= 1e-10
        for n in (3, 5, 8):
            a = int(rng.integers(n))
            th = rng.uniform(0, 2 * math.pi, (2, n))
            one = CircuitSpec.closed_chain(n, th[:1])
            assert abs(ent.ed_closed_form(one, a).value - ent.ed_engine(one, a).value) <= 1e-10
            if n >= 5:
                two = CircuitSpec.closed_chain(n, th)
                cf = ent.ed_closed_form(two, a)
                eng = ent.ed_engine(two, a)
                assert abs(cf.value - eng.value) <= 1e-10
                np.testing.assert_allclose(cf.bloch, eng.bloch, atol=1e-12)


@pytest.mark.parametrize(
    "figure, a, b, expected",
    [("fig2", 0.0, 0.0, 1.0), ("fig6", 0.0, 0.0, 0.0), ("fig7", H, H, 1.0)],
)
def test_figure_examples(figure, a, b, expected):
    assert ent.figure_formula(figure, a, b) == pytest.approx(expected, abs=1e-12)
    spec, qubit = ent.figure_spec(figure, a, b)
    assert oracle_ed(spec, qubit) == pytest.approx(expected, abs=1e-12)


def test_figure_formula_vs_engine(rng):
    for fig in ent.Figure:
        for a, b in rng.uniform(0, 2 * math.pi, (10, 2)):
            spec, q = ent.figure_spec(fig, a, b)
            assert abs(ent.figure_formula(fig, a, b) - ent.ed_engine(spec, q).value) <= 1e-10


def test_unknown_figure():
    with pytest.raises(ValueError):
        ent.figure_formula("fig5", 0, 0)


def test_separable_when_angles_are_multiples_of_pi(rng):
    for _ in range(20):
        spec = random_spec(rng)
        spec = spec.with_angles(math.pi * rng.integers(-3, 4, spec.angles.shape))
        for q in range(spec.n_qubits):
            assert ent.ed_engine(spec, q).value <= 1e-10


def test_range(rng):
    for _ in range(30):
        spec = random_spec(rng)
        for q in range(spec.n_qubits):
            assert 0.0 <= ent.ed_engine(spec, q).value <= 1 + 1e-10


def test_chain_layer2_locality(rng):
    n, a = 8, 3
    th = rng.uniform(0, 2 * math.pi, (2, n))
    base = ent.ed_engine(CircuitSpec.closed_chain(n, th), a).value
    far = [q for q in range(n) if CircuitSpec.closed_chain(n, th).topology.distance(a, q) > 2]
    th2 = th.copy()
    th2[:, far] = rng.uniform(0, 2 * math.pi, (2, len(far)))
    assert abs(ent.ed_engine(CircuitSpec.closed_chain(n, th2), a).value - base) <= 1e-12


def test_report_dict():
    d = ent.ed_engine(CircuitSpec.pair([[H, H]]), 0).to_dict()
    assert d["method"] == "engine" and "shots" not in d and len(d["bloch"]) == 3
