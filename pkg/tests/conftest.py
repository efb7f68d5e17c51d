import functools
import itertools

import numpy as np
import pytest

from ghz_decay.qstate import DensityMatrix

_ACCEPTANCE = []


def record_criterion(number, passed, detail=""):
    _ACCEPTANCE.append((number, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE, key=lambda t: t[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def kron_all(mats):
    return functools.reduce(np.kron, mats, np.eye(1, dtype=complex))


def brute_force_local(rho, kraus_ops, n):
    """Sum over all |K|**N global Kraus products built with np.kron."""
    out = np.zeros_like(rho, dtype=complex)
    for combo in itertools.product(kraus_ops, repeat=n):
        K = kron_all(combo)
        out += K @ rho @ K.conj().T
    return out


def brute_force_hetero(rho, kraus_lists):
    out = np.zeros_like(rho, dtype=complex)
    for combo in itertools.product(*kraus_lists):
        K = kron_all(combo)
        out += K @ rho @ K.conj().T
    return out


def random_density(n, rng, rank=None):
    d = 2**n
    rank = rank or d
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(n, rho)


def random_unitary(d, rng):
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
