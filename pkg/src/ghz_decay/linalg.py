"""Hermitian eigenvalue routines.

Two interchangeable backends return ascending eigenvalues of a dense
Hermitian matrix:

``"lapack"``
    ``numpy.linalg.eigvalsh`` (LAPACK ``heevd``). Default; fast enough for
    the 1024 x 1024 partial transposes of ten-qubit states.
``"ql"``
    Householder reduction to a real symmetric tridiagonal matrix followed
    by implicit-shift QL iteration. Pure numpy/Python, used to cross-check
    the default and available when LAPACK must be avoided.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NumericalError

QL_TOL = 1e-12
QL_MAX_SWEEPS = 50


def householder_tridiagonal(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(diag, offdiag)`` with ``len(offdiag) == n - 1``. The complex
    subdiagonal produced by the reflections is rotated to its modulus by a
    diagonal unitary similarity, which does not change the spectrum.
    """
    a = np.array(mat, dtype=np.complex128, copy=True)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        sub = a[k + 1:, k:]
        sub -= 2.0 * np.outer(v, v.conj() @ sub)
        sub = a[k:, k + 1:]
        sub -= 2.0 * np.outer(sub @ v, v.conj())
    diag = np.real(np.diagonal(a)).copy()
    offdiag = np.abs(np.diagonal(a, offset=-1)).copy()
    return diag, offdiag


def tridiagonal_ql(diag, offdiag, tol: float = QL_TOL, max_sweeps: int = QL_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric tridiagonal matrix by implicit QL.

    Raises :class:`NumericalError` if an eigenvalue needs more than
    ``max_sweeps`` QL sweeps.
    """
    d = [float(x) for x in diag]
    n = len(d)
    e = [float(x) for x in offdiag] + [0.0]
    if len(e) != n:
        raise DomainError("offdiag must have one element fewer than diag")
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise NumericalError(f"QL iteration did not converge for eigenvalue {l} after {max_sweeps} sweeps")
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))


def eigvalsh(mat: np.ndarray, backend: str = "lapack") -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NumericalError("matrix contains NaN or inf")
    if backend == "lapack":
        try:
            return np.linalg.eigvalsh(mat)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigensolver failed: {exc}") from exc
    if backend == "ql":
        if mat.shape[0] == 1:
            return np.real(mat[0]).astype(float)
        return tridiagonal_ql(*householder_tridiagonal(mat))
    raise DomainError(f"unknown eigensolver backend {backend!r}")
