import math

import numpy as np
import pytest

from entdist.circuit import CircuitSpec, Topology

TWO_PI = 2 * math.pi


def random_spec(rng: np.random.Generator, max_n: int = 6, max_layers: int = 4) -> CircuitSpec:
    n = int(rng.integers(2, max_n + 1))
    layers = int(rng.integers(0, max_layers + 1))
    topo = Topology.pair() if n == 2 else Topology.closed_chain(n)
    return CircuitSpec(topo, rng.uniform(0, TWO_PI, (layers, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
