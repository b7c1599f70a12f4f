import numpy as np
import pytest

from boundscramble import bennett_state, horodecki_state1, horodecki_state2, jurkowski_state
from boundscramble.states import BipartiteState, product_state

import oracles


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def default_states():
    """The four bound entangled default states."""
    return {
        "bennett": bennett_state(),
        "jurkowski(1,4,4)": jurkowski_state(1, 4, 4),
        "horodecki1(0.5)": horodecki_state1(0.5),
        "horodecki2(3.7)": horodecki_state2(3.7),
    }


@pytest.fixture(scope="session")
def separable_corpus():
    """Explicitly separable states: products and mixtures of products."""
    rng = np.random.default_rng(7)
    out = [BipartiteState(np.eye(9) / 9)]
    for _ in range(6):
        out.append(product_state(oracles.random_density(rng, 3), oracles.random_density(rng, 3)))
    for _ in range(4):
        weights = rng.dirichlet(np.ones(3))
        rho = sum(
            w * np.kron(oracles.random_density(rng, 3, rank=1), oracles.random_density(rng, 3, rank=1))
            for w in weights
        )
        out.append(BipartiteState(rho))
    return out


@pytest.fixture(scope="session")
def fixture_states(default_states):
    """Every state the kernel oracles are checked on."""
    states = dict(default_states)
    states["jurkowski(1,1,1)"] = jurkowski_state(1, 1, 1)
    states["horodecki2(2.5)"] = horodecki_state2(2.5)
    states["horodecki2(4.5)"] = horodecki_state2(4.5)
    states["max_entangled"] = BipartiteState(oracles.max_entangled())
    return states


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def _report(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
