"""Two-angle parameter sweeps of the entanglement distance.

A sweep document is YAML::

    circuit:
      topology: closed_chain
      n_qubits: 5
      layers: 2
      angles: [t1, t2]          # strings name free angles; numbers are fixed
    qubit: 2
    axes:
      - {name: t1, start: 0.0, stop: 6.283185307179586, count: 25}
      - {name: t2, start: 0.0, stop: 6.283185307179586, count: 25}
    evaluators: [engine, closed_form, sampled]

``angles`` accepts the same scalar / per-layer / matrix shorthand as a
circuit spec. Built-in presets ``fig2 fig3 fig4 fig6 fig7`` need no file.
Grid points are ordered with the first axis outermost.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
import yaml

from . import entanglement as ent
from .circuit import CircuitSpec, SpecError, expand_angles, parse_header
from .sampler import ShotConfig, estimate_ed

EVALUATORS = ("engine", "closed_form", "sampled")
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 2:
            raise SpecError(f"axis {self.name!r} needs count >= 2, got {self.count}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Circuit template with named free angles, two axes and the evaluators to run.

    ``template`` is a ``layers x n_qubits`` nested list whose entries are
    floats or free-angle names. ``preset`` is set for the built-in figures,
    whose closed-form column is the figure formula.
    """

    template_header: dict[str, Any]
    template: tuple[tuple[Any, ...], ...]
    qubit: int
    axes: tuple[Axis, Axis]
    evaluators: tuple[str, ...] = ("engine",)
    preset: ent.Figure | None = None
    _names: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = frozenset(v for row in self.template for v in row if isinstance(v, str))
        object.__setattr__(self, "_names", names)
        axis_names = {a.name for a in self.axes}
        if len(self.axes) != 2 or len(axis_names) != 2:
            raise SpecError("a sweep needs exactly two distinct axes")
        if names != axis_names:
            raise SpecError(f"free angles {sorted(names)} do not match axes {sorted(axis_names)}")
        bad = set(self.evaluators) - set(EVALUATORS)
        if bad or not self.evaluators:
            raise SpecError(f"unknown evaluators {sorted(bad)}; choose from {EVALUATORS}")

    def circuit(self, values: dict[str, float]) -> CircuitSpec:
        rows = [[values[v] if isinstance(v, str) else v for v in row] for row in self.template]
        topo, layers = parse_header(self.template_header)
        return CircuitSpec(topo, np.array(rows, dtype=float).reshape(layers, topo.n_qubits))

    def points(self) -> list[tuple[float, float]]:
        return [self.point(i) for i in range(self.size)]

    @property
    def size(self) -> int:
        return self.axes[0].count * self.axes[1].count

    def point(self, index: int) -> tuple[float, float]:
        i, j = divmod(index, self.axes[1].count)
        return float(self.axes[0].values()[i]), float(self.axes[1].values()[j])


def _angle_or_name(v: Any) -> Any:
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            return v.strip()
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SpecError(f"angle must be a number or a free-angle name, got {v!r}")
    return float(v)


def sweep_from_dict(doc: Any) -> SweepSpec:
    if not isinstance(doc, dict):
        raise SpecError("sweep document must be a mapping")
    if "preset" in doc:
        return preset(
            doc["preset"],
            count=int(doc.get("count", 25)),
            evaluators=tuple(doc.get("evaluators", ("engine", "closed_form"))),
        )
    for key in ("circuit", "axes"):
        if key not in doc:
            raise SpecError(f"missing key: {key}")
    circ = doc["circuit"]
    topo, layers = parse_header(circ)
    template = expand_angles(circ.get("angles"), layers, topo.n_qubits, convert=_angle_or_name)
    axes = doc["axes"]
    if not isinstance(axes, list) or len(axes) != 2:
        raise SpecError("axes must be a list of two entries")
    try:
        parsed = tuple(Axis(str(a["name"]), float(a["start"]), float(a["stop"]), int(a["count"])) for a in axes)
    except (KeyError, TypeError) as exc:
        raise SpecError(f"bad axis entry: {exc}") from None
    qubit = int(doc.get("qubit", 0))
    if not 0 <= qubit < topo.n_qubits:
        raise SpecError(f"qubit {qubit} out of range")
    header = {"topology": topo.kind.value, "n_qubits": topo.n_qubits, "layers": layers}
    return SweepSpec(
        header,
        tuple(tuple(r) for r in template),
        qubit,
        parsed,  # type: ignore[arg-type]
        tuple(doc.get("evaluators", ("engine",))),
    )


def parse_sweep(text: str) -> SweepSpec:
    return sweep_from_dict(yaml.safe_load(text))


def load_sweep(path: str) -> SweepSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_sweep(fh.read())


def preset(
    figure: ent.Figure | str,
    *,
    count: int = 25,
    start: float = 0.0,
    stop: float = TWO_PI,
    evaluators: Sequence[str] = ("engine", "closed_form"),
) -> SweepSpec:
    """Sweep for one of the built-in figure surfaces over ``[start, stop]^2``."""
    fig = ent.Figure(figure)
    na, nb = ent.FIGURE_AXES[fig]
    h = math.pi / 2
    if fig in (ent.Figure.FIG2, ent.Figure.FIG3, ent.Figure.FIG4):
        layers = {ent.Figure.FIG2: (h, na, nb), ent.Figure.FIG3: (na, h, nb), ent.Figure.FIG4: (na, nb, h)}[fig]
        header = {"topology": "pair", "n_qubits": 2, "layers": 3}
        template = tuple((t, t) for t in layers)
        qubit = 0
    else:
        n, qubit = ent.CHAIN_N, ent.CHAIN_TARGET
        header = {"topology": "closed_chain", "n_qubits": n, "layers": 2}
        if fig is ent.Figure.FIG6:
            template = ((na,) * n, (nb,) * n)
        else:
            row = [nb] * n
            row[qubit] = na
            template = (tuple(row), tuple(row))
    axes = (Axis(na, start, stop, count), Axis(nb, start, stop, count))
    return SweepSpec(header, template, qubit, axes, tuple(evaluators), preset=fig)


def _closed_form_value(sweep: SweepSpec, spec: CircuitSpec, a: float, b: float) -> float:
    if sweep.preset is not None:
        return ent.figure_formula(sweep.preset, a, b)
    return ent.ed_closed_form(spec, sweep.qubit).value


def evaluate_point(sweep: SweepSpec, index: int, cfg: ShotConfig) -> dict[str, float]:
    a, b = sweep.point(index)
    spec = sweep.circuit({sweep.axes[0].name: a, sweep.axes[1].name: b})
    row = {sweep.axes[0].name: a, sweep.axes[1].name: b}
    for ev in sweep.evaluators:
        if ev == "engine":
            row[ev] = ent.ed_engine(spec, sweep.qubit).value
        elif ev == "closed_form":
            row[ev] = _closed_form_value(sweep, spec, a, b)
        else:
            row[ev] = estimate_ed(spec, sweep.qubit, cfg, index=index).value
    return row


def _evaluate_chunk(args: tuple[SweepSpec, Sequence[int], ShotConfig]) -> list[dict[str, float]]:
    sweep, indices, cfg = args
    return [evaluate_point(sweep, i, cfg) for i in indices]


def run_sweep(sweep: SweepSpec, cfg: ShotConfig = ShotConfig(), jobs: int = 1) -> list[dict[str, float]]:
    """Evaluate every grid point; rows come back in grid order for any ``jobs``."""
    n = sweep.size
    if "closed_form" in sweep.evaluators and sweep.preset is None:
        first = sweep.point(0)
        # fail before doing any work if no closed form applies
        ent.form_for_spec(sweep.circuit(dict(zip((a.name for a in sweep.axes), first))), sweep.qubit)
    if jobs <= 1:
        return _evaluate_chunk((sweep, range(n), cfg))
    chunks = [list(range(i, n, jobs)) for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_evaluate_chunk, [(sweep, c, cfg) for c in chunks]))
    rows: list[dict[str, float] | None] = [None] * n
    for chunk, part in zip(chunks, parts):
        for i, row in zip(chunk, part):
            rows[i] = row
    return rows  # type: ignore[return-value]


def columns(sweep: SweepSpec) -> list[str]:
    return [sweep.axes[0].name, sweep.axes[1].name, *sweep.evaluators]


def _fmt(v: float) -> str:
    return format(v, ".17g")


def to_csv(sweep: SweepSpec, rows: Sequence[dict[str, float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = columns(sweep)
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def to_json(sweep: SweepSpec, rows: Sequence[dict[str, float]], cfg: ShotConfig) -> str:
    doc = {
        "columns": columns(sweep),
        "qubit": sweep.qubit,
        "preset": sweep.preset.value if sweep.preset else None,
        "rows": [[row[c] for c in columns(sweep)] for row in rows],
    }
    if "sampled" in sweep.evaluators:
        doc["shots"], doc["seed"] = cfg.shots, cfg.seed
    return json.dumps(doc, indent=2)
