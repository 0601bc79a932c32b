"""Cross-check suites behind ``entdist verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import entanglement as ent
from . import heisenberg, reference
from . import statevector as sv
from .circuit import CircuitSpec, Topology
from .pauli import PauliString
from .sampler import DEFAULT_SEED, ShotConfig, agreement
from .sweep import preset, run_sweep

SUITES = ("two-qubit", "chain", "figures")

MAE_BAND = 0.03
RMSE_BAND = 0.04
PEARSON_BAND = 0.99


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str


def _max_err(pairs: Iterator[tuple[float, float]]) -> float:
    return max((abs(a - b) for a, b in pairs), default=0.0)


def _check(suite: str, name: str, err: float, tol: float) -> Check:
    return Check(suite, name, err <= tol, f"max |diff| = {err:.3g} (tol {tol:g})")


def two_qubit(seed: int = DEFAULT_SEED, samples: int = 100) -> list[Check]:
    rng = np.random.default_rng([seed, 2])
    s = "two-qubit"
    fixtures: dict[int, Callable] = {1: reference.layer1, 2: reference.layer2, 3: reference.layer3_single}
    errs = {1: 0.0, 2: 0.0, 3: 0.0}
    rec_err = oracle_err = ident_err = cf_err = 0.0
    for _ in range(samples):
        full = rng.uniform(0, 2 * math.pi, (3, 2))
        for layers, fixture in fixtures.items():
            spec = CircuitSpec.pair(full[:layers])
            expected = fixture(full[:layers])
            recurrence = reference.pair_expectations(full[:layers])
            state = sv.run(spec)
            for label, val in expected.items():
                obs = PauliString.parse(reference.pauli_label_to_text(label), 2)
                got = heisenberg.expectation(spec, obs)
                errs[layers] = max(errs[layers], abs(got - val))
                rec_err = max(rec_err, abs(got - recurrence[label]))
                oracle_err = max(oracle_err, abs(got - sv.pauli_expectation(state, obs)))
            e0 = ent.ed_engine(spec, 0).value
            e1 = ent.ed_engine(spec, 1).value
            yy = ent.ed_two_qubit_identity(spec)
            ident_err = max(ident_err, abs(e0 - yy), abs(e1 - yy))
            if layers <= 2:
                cf_err = max(cf_err, abs(ent.ed_closed_form(spec, 0).value - e0))
    return [
        _check(s, "layer-1 expectations (15 observables)", errs[1], 1e-12),
        _check(s, "layer-2 expectations (15 observables)", errs[2], 1e-12),
        _check(s, "layer-3 single-qubit expectations", errs[3], 1e-12),
        _check(s, "recurrence relations, layers 1-3", rec_err, 1e-12),
        _check(s, "engine vs statevector", oracle_err, 1e-10),
        _check(s, "ED(q0) = ED(q1) = <Y0Y1>^2", ident_err, 1e-10),
        _check(s, "closed forms (1 and 2 layers) vs engine", cf_err, 1e-10),
    ]


def chain(seed: int = DEFAULT_SEED, samples: int = 40) -> list[Check]:
    rng = np.random.default_rng([seed, 3])
    s = "chain"
    l1 = l2 = oracle_err = 0.0
    for i in range(samples):
        n = (5, 6, 7)[i % 3]
        a = int(rng.integers(n))
        angles = rng.uniform(0, 2 * math.pi, (2, n))
        topo = Topology.closed_chain(n)
        one, two = CircuitSpec(topo, angles[:1]), CircuitSpec(topo, angles)
        l1 = max(l1, abs(ent.ed_closed_form(one, a).value - ent.ed_engine(one, a).value))
        eng = ent.ed_engine(two, a)
        l2 = max(l2, abs(ent.ed_closed_form(two, a).value - eng.value))
        oracle = sv.reduced_bloch(sv.run(two), a)
        oracle_err = max(oracle_err, _max_err(zip(eng.bloch, oracle)))
    return [
        _check(s, "one-layer chain ED closed form vs engine", l1, 1e-10),
        _check(s, "two-layer chain ED closed form vs engine", l2, 1e-10),
        _check(s, "chain Bloch vectors vs statevector", oracle_err, 1e-10),
    ]


def figures(seed: int = DEFAULT_SEED, shots: int = 1024, count: int = 9) -> list[Check]:
    out = []
    cfg = ShotConfig(shots, seed)
    for fig in ent.Figure:
        rows = run_sweep(preset(fig, count=count, evaluators=("engine", "closed_form", "sampled")), cfg)
        eng = [r["engine"] for r in rows]
        err = _max_err((r["engine"], r["closed_form"]) for r in rows)
        out.append(_check("figures", f"{fig.value} figure formula vs engine", err, 1e-10))
        m = agreement(eng, [r["sampled"] for r in rows])
        ok = m.mae <= MAE_BAND and m.rmse <= RMSE_BAND and m.pearson is not None and m.pearson >= PEARSON_BAND
        pearson = "undefined" if m.pearson is None else f"{m.pearson:.4f}"
        out.append(
            Check(
                "figures",
                f"{fig.value} sampled @{shots} shots vs analytic",
                ok,
                f"MAE {m.mae:.4f}  RMSE {m.rmse:.4f}  pearson {pearson}",
            )
        )
    return out


def run_suites(suite: str = "all", seed: int = DEFAULT_SEED, shots: int = 1024) -> list[Check]:
    chosen = SUITES if suite == "all" else (suite,)
    results: list[Check] = []
    for name in chosen:
        if name == "two-qubit":
            results += two_qubit(seed)
        elif name == "chain":
            results += chain(seed)
        elif name == "figures":
            results += figures(seed, shots)
        else:
            raise ValueError(f"unknown suite {name!r}")
    return results


def format_table(results: list[Check]) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{mark}  {r.suite:<9}  {r.name:<{width}}  {r.detail}")
    return "\n".join(lines)
