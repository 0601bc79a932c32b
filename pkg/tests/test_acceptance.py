"""Exit criteria. Each test prints one PASS/FAIL line (also collected in the
terminal summary) and asserts at the stated tolerance."""

import math
import time

import numpy as np

from conftest import ACCEPTANCE_LINES, TWO_PI
from entdist import entanglement as ent
from entdist import reference
from entdist import statevector as sv
from entdist.circuit import CircuitSpec, Topology
from entdist.heisenberg import backpropagate, bloch_vector, expectation
from entdist.pauli import PauliString
from entdist.sampler import ShotConfig, agreement
from entdist.sweep import preset, run_sweep


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def spec_for(n: int, angles) -> CircuitSpec:
    return CircuitSpec(Topology.pair() if n == 2 else Topology.closed_chain(n), angles)


def test_01_oracle_equivalence():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    checked = 0
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        layers = int(rng.integers(0, 5))
        spec = spec_for(n, rng.uniform(0, TWO_PI, (layers, n)))
        state = sv.run(spec)
        observables = [PauliString.from_map({q: f}, n) for q in range(n) for f in "XYZ"]
        observables += [
            PauliString.from_map({i: a, j: b}, n) for i, j in spec.topology.edges for a in "XYZ" for b in "XYZ"
        ]
        for o in observables:
            worst = max(worst, abs(expectation(spec, o) - sv.pauli_expectation(state, o)))
            checked += 1
    elapsed = time.perf_counter() - start
    report(
        1,
        "engine vs statevector, 1000 random specs",
        worst <= 1e-10 and elapsed < 60,
        f"{checked} expectations, max |diff| {worst:.2e} (tol 1e-10), {elapsed:.1f}s (target < 60s)",
    )


def test_02_two_qubit_recurrence_fixtures():
    rng = np.random.default_rng(202)
    worst = {1: 0.0, 2: 0.0, 3: 0.0}
    fixtures = {1: reference.layer1, 2: reference.layer2, 3: reference.layer3_single}
    for _ in range(100):
        t = rng.uniform(0, TWO_PI, (3, 2))
        for layers, fixture in fixtures.items():
            spec = CircuitSpec.pair(t[:layers])
            for label, val in fixture(t[:layers]).items():
                got = expectation(spec, PauliString.parse(reference.pauli_label_to_text(label), 2))
                worst[layers] = max(worst[layers], abs(got - val))
    ok = max(worst.values()) <= 1e-12
    report(
        2,
        "two-qubit layer 1-2 (15 obs) and layer 3 (6 obs) fixtures, 100 tuples",
        ok,
        " ".join(f"L{k} {v:.1e}" for k, v in worst.items()) + " (tol 1e-12; layer-3 <Z1> uses the corrected bracket)",
    )


def test_03_ed_identity():
    rng = np.random.default_rng(303)
    worst = 0.0
    for i in range(500):
        layers = 1 + i % 3
        spec = CircuitSpec.pair(rng.uniform(0, TWO_PI, (layers, 2)))
        yy = ent.ed_two_qubit_identity(spec)
        e0, e1 = ent.ed_engine(spec, 0).value, ent.ed_engine(spec, 1).value
        worst = max(worst, abs(e0 - e1), abs(e0 - yy), abs(e1 - yy))
    report(3, "ED(q0) == ED(q1) == <Y0Y1>^2, 500 specs, L in {1,2,3}", worst <= 1e-10, f"max |diff| {worst:.2e} (tol 1e-10)")


def test_04_closed_forms():
    rng = np.random.default_rng(404)
    worst = dict.fromkeys(ent.ClosedForm, 0.0)
    for i in range(200):
        t = rng.uniform(0, TWO_PI, (2, 2))
        for layers, form in ((1, ent.ClosedForm.PAIR_LAYER1), (2, ent.ClosedForm.PAIR_LAYER2)):
            spec = CircuitSpec.pair(t[:layers])
            f, angles = ent.form_for_spec(spec, 0)
            assert f is form
            worst[form] = max(worst[form], abs(ent.closed_form(form, angles) - ent.ed_engine(spec, 0).value))
        n1 = int(rng.integers(3, 8))
        a1 = int(rng.integers(n1))
        spec = CircuitSpec.closed_chain(n1, rng.uniform(0, TWO_PI, (1, n1)))
        _, angles = ent.form_for_spec(spec, a1)
        e = abs(ent.closed_form(ent.ClosedForm.CHAIN_LAYER1, angles) - ent.ed_engine(spec, a1).value)
        worst[ent.ClosedForm.CHAIN_LAYER1] = max(worst[ent.ClosedForm.CHAIN_LAYER1], e)
        n2 = (5, 6, 7)[i % 3]
        a2 = int(rng.integers(n2))
        spec = CircuitSpec.closed_chain(n2, rng.uniform(0, TWO_PI, (2, n2)))
        _, angles = ent.form_for_spec(spec, a2)
        e = abs(ent.closed_form(ent.ClosedForm.CHAIN_LAYER2, angles) - ent.ed_engine(spec, a2).value)
        worst[ent.ClosedForm.CHAIN_LAYER2] = max(worst[ent.ClosedForm.CHAIN_LAYER2], e)
    report(
        4,
        "closed forms vs engine, 200 angle sets each",
        max(worst.values()) <= 1e-10,
        " ".join(f"{k.value} {v:.1e}" for k, v in worst.items()) + " (tol 1e-10)",
    )


def test_05_figure_formulas():
    worst = {}
    for fig in ent.Figure:
        rows = run_sweep(preset(fig, count=25, evaluators=("engine", "closed_form")))
        assert len(rows) == 625
        worst[fig.value] = max(abs(r["engine"] - r["closed_form"]) for r in rows)
    report(
        5,
        "figure formulas vs engine, 25x25 grids",
        max(worst.values()) <= 1e-10,
        " ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " (tol 1e-10)",
    )


def test_06_point_values():
    h, q = math.pi / 2, math.pi / 4
    got = {
        "pair L1 (pi/2, pi/2)": ent.ed_engine(CircuitSpec.pair([[h, h]]), 0).value,
        "chain L1 (pi/2)^3": ent.ed_engine(CircuitSpec.closed_chain(5, [[h] * 5]), 2).value,
        "chain L1 (pi/4)^3": ent.ed_engine(CircuitSpec.closed_chain(5, [[q] * 5]), 2).value,
        "closed form (pi/4)^3": ent.closed_form("chain_layer1", {"a_l1": q, "am1_l1": q, "ap1_l1": q}),
    }
    expected = {"pair L1 (pi/2, pi/2)": 1.0, "chain L1 (pi/2)^3": 1.0, "chain L1 (pi/4)^3": 0.375, "closed form (pi/4)^3": 0.375}
    worst = max(abs(got[k] - expected[k]) for k in got)
    report(6, "known point values", worst <= 1e-12, ", ".join(f"{k} = {v:.15g}" for k, v in got.items()))


def test_07_reality_and_range():
    rng = np.random.default_rng(707)
    y_nonzero = 0
    ed_min, ed_max, imag_max, norm_err = 1.0, 0.0, 0.0, 0.0
    for _ in range(300):
        n = int(rng.integers(2, 7))
        spec = spec_for(n, rng.uniform(0, TWO_PI, (int(rng.integers(0, 5)), n)))
        amps = sv.run(spec).amplitudes
        imag_max = max(imag_max, float(np.max(np.abs(amps.imag))))
        norm_err = max(norm_err, abs(float(np.vdot(amps, amps).real) - 1))
        for qb in range(n):
            x, y, z = bloch_vector(spec, qb)
            y_nonzero += y != 0.0
            v = ent.ed_from_bloch(x, y, z)
            ed_min, ed_max = min(ed_min, v), max(ed_max, v)
    ok = y_nonzero == 0 and ed_min >= 0 and ed_max <= 1 + 1e-10 and imag_max < 1e-12 and norm_err <= 1e-12
    report(
        7,
        "reality and range, 300 specs",
        ok,
        f"nonzero <Y_q>: {y_nonzero}, ED in [{ed_min:.3g}, {ed_max:.6g}], max |imag| {imag_max:.1e}, norm err {norm_err:.1e}",
    )


def test_08_sampled_agreement():
    start = time.perf_counter()
    parts, ok = [], True
    for fig in ("fig2", "fig3", "fig4"):
        rows = run_sweep(preset(fig, count=9, evaluators=("engine", "sampled")), ShotConfig(1024))
        m = agreement([r["engine"] for r in rows], [r["sampled"] for r in rows])
        ok &= m.mae <= 0.03 and m.rmse <= 0.04 and m.pearson is not None and m.pearson >= 0.99
        parts.append(f"{fig}: MAE {m.mae:.4f} RMSE {m.rmse:.4f} r {m.pearson:.4f}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    report(8, "sampled vs analytic, 1024 shots, 9x9 grids", ok, "; ".join(parts) + f"; {elapsed:.1f}s")


def test_09_shot_scaling():
    sweep = preset("fig2", count=9, evaluators=("engine", "sampled"))
    mean_rmse = {}
    for shots in (1024, 16384):
        rmses = []
        for seed in range(50):
            rows = run_sweep(sweep, ShotConfig(shots, seed))
            rmses.append(agreement([r["engine"] for r in rows], [r["sampled"] for r in rows]).rmse)
        mean_rmse[shots] = float(np.mean(rmses))
    ratio = mean_rmse[16384] / mean_rmse[1024]
    report(
        9,
        "RMSE ratio 16384 vs 1024 shots, 50 seeds",
        0.2 <= ratio <= 0.35,
        f"{mean_rmse[1024]:.4f} -> {mean_rmse[16384]:.4f}, ratio {ratio:.3f} (band [0.2, 0.35])",
    )


def test_10_light_cone():
    rng = np.random.default_rng(1010)
    n = 9
    topo = Topology.closed_chain(n)
    support_ok, worst = True, 0.0
    for a in range(n):
        th = rng.uniform(0, TWO_PI, (2, n))
        spec = CircuitSpec(topo, th)
        window = {(a + k) % n for k in range(-2, 3)}
        support_ok &= backpropagate(spec, PauliString.from_map({a: "X"}, n)).evolved.support() <= window
        base = ent.ed_engine(spec, a).value
        outside = [q for q in range(n) if q not in window]
        for _ in range(5):
            th2 = th.copy()
            th2[:, outside] = rng.uniform(0, TWO_PI, (2, len(outside)))
            worst = max(worst, abs(ent.ed_engine(CircuitSpec(topo, th2), a).value - base))
    report(
        10,
        "N=9 chain, L=2 light cone",
        support_ok and worst <= 1e-12,
        f"support within a-2..a+2: {support_ok}, max ED change {worst:.1e} (tol 1e-12)",
    )
