import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghz_decay.errors import DomainError, NumericalError
from ghz_decay.linalg import eigvalsh, householder_tridiagonal, tridiagonal_ql


def random_hermitian(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


@pytest.mark.parametrize("n", [1, 2, 3, 7, 32, 100])
def test_ql_matches_lapack(n, rng):
    a = random_hermitian(n, rng)
    ref = np.linalg.eigvalsh(a)
    got = eigvalsh(a, backend="ql")
    assert np.max(np.abs(got - ref)) <= 1e-10 * max(1.0, np.abs(ref).max())


def test_tridiagonal_preserves_spectrum(rng):
    a = random_hermitian(12, rng)
    d, e = householder_tridiagonal(a)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(np.linalg.eigvalsh(t), np.linalg.eigvalsh(a), atol=1e-12)


def test_known_tridiagonal_spectrum():
    # 1D Laplacian: eigenvalues 2 - 2 cos(k pi / (n + 1))
    n = 20
    d = np.full(n, 2.0)
    e = np.full(n - 1, -1.0)
    expected = 2 - 2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    np.testing.assert_allclose(tridiagonal_ql(d, e), np.sort(expected), atol=1e-13)


def test_degenerate_and_diagonal_inputs():
    np.testing.assert_array_equal(eigvalsh(np.diag([3.0, -1.0, 2.0]), "ql"), [-1.0, 2.0, 3.0])
    np.testing.assert_allclose(eigvalsh(np.eye(6) * 0.25, "ql"), np.full(6, 0.25), atol=1e-15)


def test_nonconvergence_is_an_error():
    d = np.array([1.0, 2.0, 3.0, 4.0])
    e = np.array([1.0, 1.0, 1.0])
    with pytest.raises(NumericalError):
        tridiagonal_ql(d, e, max_sweeps=0)


def test_bad_inputs():
    with pytest.raises(DomainError):
        eigvalsh(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        eigvalsh(np.eye(2), backend="magic")
    with pytest.raises(NumericalError):
        eigvalsh(np.array([[np.nan, 0], [0, 1]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 24), st.integers(0, 2**32 - 1))
def test_ql_spectrum_property(n, seed):
    rng = np.random.default_rng(seed)
    a = random_hermitian(n, rng)
    got = eigvalsh(a, "ql")
    assert np.all(np.diff(got) >= 0)
    assert got.sum() == pytest.approx(np.trace(a).real, abs=1e-9 * n)
    assert np.max(np.abs(got - np.linalg.eigvalsh(a))) <= 1e-9
