import numpy as np
import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_density_matrix(rng, rank=None):
    rank = rank or int(rng.integers(1, 5))
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_product_state(rng):
    def qubit():
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        r = g @ g.conj().T
        return r / np.trace(r).real

    return np.kron(qubit(), qubit())


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def bell():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(v, v).astype(complex)


@pytest.fixture
def product00():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    return m
