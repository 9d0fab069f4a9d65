import numpy as np
import pytest

from qcompare.sampling import indexed_rng, random_density_array

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


KET0 = np.diag([1.0, 0.0])
KET1 = np.diag([0.0, 1.0])
PLUS = np.full((2, 2), 0.5)
MIXED = np.eye(2) / 2


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def random_pair(d, rng):
    return random_density_array(d, rng), random_density_array(d, rng)


@pytest.fixture
def rng():
    return indexed_rng(20261015, 0)
