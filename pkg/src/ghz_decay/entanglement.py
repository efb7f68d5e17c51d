"""Partial transpose and negativity across qubit bipartitions."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, UndefinedNormalization
from .linalg import eigvalsh
from .qstate import PSD_TOL, DensityMatrix

NORMALIZED_FLOOR = 1e-9


@dataclass(frozen=True)
class Bipartition:
    """Split of ``num_qubits`` qubits into parts A and B.

    Bit ``q`` of ``side_a_mask`` (value ``1 << q``) puts qubit ``q`` in part A.
    Negativity does not depend on which side is transposed, so the mask is
    canonicalized to the smaller part; on a tie, the part holding qubit 0.
    """

    num_qubits: int
    side_a_mask: int

    def __post_init__(self):
        n = int(self.num_qubits)
        if n < 2:
            raise DomainError(f"a bipartition needs at least 2 qubits, got {n}")
        full = (1 << n) - 1
        mask = int(self.side_a_mask)
        if mask <= 0 or mask >= full:
            raise DomainError(f"mask {mask:#b} must select a nonempty proper subset of {n} qubits")
        size_a = bin(mask).count("1")
        size_b = n - size_a
        if size_a > size_b or (size_a == size_b and not mask & 1):
            mask = full ^ mask
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "side_a_mask", mask)

    @classmethod
    def from_qubits(cls, num_qubits: int, qubits) -> "Bipartition":
        mask = 0
        for q in qubits:
            if not 0 <= q < num_qubits:
                raise DomainError(f"qubit {q} out of range for N={num_qubits}")
            mask |= 1 << q
        return cls(num_qubits, mask)

    @property
    def side_a(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.num_qubits) if self.side_a_mask >> q & 1)

    @property
    def side_b(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.num_qubits) if not self.side_a_mask >> q & 1)

    @property
    def label(self) -> str:
        """Qubits of part A joined by ``-``, e.g. ``0-1``."""
        return "-".join(str(q) for q in self.side_a)


@dataclass(frozen=True)
class NegativityResult:
    value: float
    eigenvalue_floor: float
    normalized: float | None = None


class CutPolicy(str, enum.Enum):
    MOST_BALANCED = "most_balanced"
    LEAST_BALANCED = "least_balanced"
    ALL = "all"


def _as_matrix(rho):
    if isinstance(rho, DensityMatrix):
        return rho.num_qubits, rho.elements
    mat = np.asarray(rho)
    n = int(round(np.log2(mat.shape[0])))
    if mat.shape != (2**n, 2**n):
        raise DomainError(f"matrix of shape {mat.shape} is not a qubit operator")
    return n, mat


def partial_transpose(rho, cut: Bipartition) -> np.ndarray:
    """Transpose the part-A row and column bits of ``rho``.

    Accepts a :class:`DensityMatrix` or any square ``2**N`` array.
    """
    n, mat = _as_matrix(rho)
    if cut.num_qubits != n:
        raise DomainError(f"cut is for {cut.num_qubits} qubits but state has {n}")
    axes = list(range(2 * n))
    for q in cut.side_a:
        axes[q], axes[n + q] = axes[n + q], axes[q]
    t = mat.reshape((2,) * (2 * n)).transpose(axes)
    return np.ascontiguousarray(t).reshape(mat.shape)


def negativity(rho, cut: Bipartition, backend: str = "lapack") -> NegativityResult:
    """Negativity ``(||rho^T_A||_1 - 1) / 2`` from the full partial-transpose spectrum.

    Raises :class:`NumericalError` if the eigensolver fails or the spectrum
    is inconsistent with a unit-trace input; never returns a silent zero.
    """
    evals = eigvalsh(partial_transpose(rho, cut), backend)
    # The trace-norm form cancels against 1; summing the negative part keeps
    # relative accuracy for small negativities.
    from_norm = 0.5 * (float(np.sum(np.abs(evals))) - 1.0)
    if from_norm < -PSD_TOL:
        raise NumericalError(f"negativity came out as {from_norm:.3e}; input is not a unit-trace state")
    value = -float(np.sum(evals[evals < 0.0]))
    return NegativityResult(max(0.0, value), float(evals[0]))


def normalized_negativity(rho_evolved, rho_initial, cut: Bipartition,
                          floor: float = NORMALIZED_FLOOR, backend: str = "lapack") -> float:
    initial = negativity(rho_initial, cut, backend).value
    if initial <= floor:
        raise UndefinedNormalization(f"initial negativity {initial:.3e} is below the floor {floor:.1e}")
    return negativity(rho_evolved, cut, backend).value / initial


def max_negativity(cut: Bipartition) -> float:
    """Negativity of a maximally entangled state across ``cut``: ``(d_A - 1) / 2``."""
    d_a = 2 ** len(cut.side_a)
    return 0.5 * (d_a - 1)


def enumerate_cuts(num_qubits: int, policy: CutPolicy = CutPolicy.ALL) -> list[Bipartition]:
    """Cuts selected by ``policy``.

    The least-balanced cut isolates qubit 0. Local channels act identically
    on every qubit and the Haar measure is permutation invariant, so any
    single qubit gives the same statistics.
    """
    if num_qubits < 2:
        raise DomainError(f"need at least 2 qubits to cut, got {num_qubits}")
    policy = CutPolicy(policy)
    if policy is CutPolicy.LEAST_BALANCED:
        return [Bipartition(num_qubits, 1)]
    if policy is CutPolicy.MOST_BALANCED:
        half = (num_qubits + 1) // 2
        return [Bipartition(num_qubits, (1 << half) - 1)]
    seen = {}
    for size in range(1, num_qubits // 2 + 1):
        for qubits in itertools.combinations(range(num_qubits), size):
            cut = Bipartition.from_qubits(num_qubits, qubits)
            seen.setdefault(cut.side_a_mask, cut)
    return list(seen.values())
