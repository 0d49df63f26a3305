import numpy as np
import pytest

from pstabilizer.circuit import generate_random_circuit
from pstabilizer.oracle import density_from_statevector, simulate_statevector

_ACCEPTANCE_LINES = []


def random_suite(count, max_gates=200, seed=0):
    """Seeded random circuits cycling n = 1..4 with up to ``max_gates`` gates."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = 1 + i % 4
        gates = int(rng.integers(1, max_gates + 1))
        yield generate_random_circuit(n, gates, seed=seed * 100_003 + i)


def oracle_rho(circuit):
    return density_from_statevector(simulate_statevector(circuit)).rho


@pytest.fixture
def report():
    """Record a one-line PASS/FAIL verdict shown in the terminal summary."""

    def _report(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
