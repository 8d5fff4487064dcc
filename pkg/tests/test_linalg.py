import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrgitf.linalg import eigvalsh2, jacobi_eigh


def _hermitian(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 3, 4, 16]))
def test_jacobi_matches_lapack(seed, n):
    m = _hermitian(seed, n)
    w, v = jacobi_eigh(m)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-12 * max(1, np.abs(m).max()) * n)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-11 * n)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12 * n)


def test_jacobi_degenerate_spectrum():
    # block Hamiltonian style: doubly degenerate +-sqrt(2)
    z = np.diag([1.0, -1.0])
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    h = -(np.kron(z, z) + np.kron(x, np.eye(2)))
    w, v = jacobi_eigh(h)
    np.testing.assert_allclose(w, [-np.sqrt(2)] * 2 + [np.sqrt(2)] * 2, atol=1e-14)
    np.testing.assert_allclose(h @ v, v @ np.diag(w), atol=1e-13)


def test_jacobi_diagonal_input_is_untouched():
    w, _ = jacobi_eigh(np.diag([0.5, 0.3, 0.2, 0.0]))
    assert list(w) == [0.0, 0.2, 0.3, 0.5]


def test_eigvalsh2_batch():
    rng = np.random.default_rng(3)
    ms = [_hermitian(int(s), 2) for s in rng.integers(0, 1000, 20)]
    got = eigvalsh2(np.array(ms))
    for m, w in zip(ms, got):
        np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-13)


@pytest.mark.parametrize("n", [2, 4])
def test_zero_matrix(n):
    w, v = jacobi_eigh(np.zeros((n, n)))
    assert np.all(w == 0)
    np.testing.assert_allclose(v, np.eye(n))
