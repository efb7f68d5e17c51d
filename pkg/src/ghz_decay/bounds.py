"""Closed-form entanglement bounds for GHZ-type states under local noise.

Each ``bound_*`` function returns a multiplier. For depolarizing and
dephasing noise it multiplies the initial entanglement of the state; for
the thermal bath it multiplies the largest entanglement the cut admits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channels import thermal, thermal_prefactors
from .errors import DomainError
from .qstate import GhzSpec, density_from_pure, make_generalized_ghz


def _check(num_qubits, p):
    if isinstance(num_qubits, bool) or int(num_qubits) != num_qubits or num_qubits < 1:
        raise DomainError(f"number of qubits must be a positive integer, got {num_qubits!r}")
    p = float(p)
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    return int(num_qubits), p


def hamming_weight(k: int) -> int:
    if k < 0:
        raise DomainError(f"label must be non-negative, got {k}")
    return bin(k).count("1")


def bound_depolarizing(num_qubits: int, p: float) -> float:
    n, p = _check(num_qubits, p)
    return (1.0 - p) ** n


def bound_dephasing(num_qubits: int, p: float) -> float:
    # Same (1-p)^N as depolarizing, but only valid for GHZ-diagonal inputs:
    # dephasing is basis dependent, so it has no all-two-qubit-states version.
    n, p = _check(num_qubits, p)
    return (1.0 - p) ** n


def _thermal_factors(nbar, p, diffusive):
    down, up = thermal_prefactors(nbar, diffusive)
    # weights of |0><0| and |1><1| in K0^dag K0 + K2^dag K2
    return 1.0 - up * p, 1.0 - down * p


def bound_thermal_state_dependent(alpha, beta, kappa: int, num_qubits: int, nbar, p: float,
                                  diffusive: bool = False) -> float:
    n, p = _check(num_qubits, p)
    if not 0 <= kappa <= n:
        raise DomainError(f"kappa must lie in [0, {n}], got {kappa}")
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    if abs(a2 + b2 - 1.0) > 1e-12:
        raise DomainError(f"|alpha|^2 + |beta|^2 = {a2 + b2!r}, expected 1")
    ground, excited = _thermal_factors(nbar, p, diffusive)
    return a2 * ground ** (n - kappa) * excited**kappa + b2 * ground**kappa * excited ** (n - kappa)


def bound_thermal_uniform(num_qubits: int, nbar, p: float, diffusive: bool = False) -> float:
    n, p = _check(num_qubits, p)
    ground, _ = _thermal_factors(nbar, p, diffusive)
    return ground**n


def lambda_ent_trace(ghz: GhzSpec, nbar, p: float, diffusive: bool = False) -> float:
    """Weight of the non-separable part of a thermally evolved GHZ state.

    Built from the thermal Kraus operators themselves: the trace of
    ``sum_{j in {0, 2}^N} (K_j1^dag K_j1 (x) ... ) rho_k`` with the sum
    expanded into an explicit ``2**N x 2**N`` operator.
    """
    ch = thermal(nbar, p, diffusive)
    k0, _, k2, _ = ch.kraus_ops
    single = k0.conj().T @ k0 + k2.conj().T @ k2
    op = np.ones((1, 1), dtype=np.complex128)
    for _ in range(ghz.num_qubits):
        op = np.kron(op, single)
    rho = density_from_pure(make_generalized_ghz(ghz)).elements
    return float(np.real(np.trace(op @ rho)))


def parity_weights(num_qubits: int, p: float) -> tuple[float, float]:
    """Probabilities of an even / odd number of sigma_z flips under N-fold depolarizing.

    Summed term by term with ``math.fsum`` rather than taken from the
    closed forms, so ``lambda_plus - lambda_minus == (1-p)**N`` is a real check.
    """
    n, p = _check(num_qubits, p)
    keep = 1.0 - 0.75 * p
    flip = 0.25 * p
    terms = [math.comb(n, m) * keep ** (n - m) * flip**m for m in range(n + 1)]
    return math.fsum(terms[0::2]), math.fsum(terms[1::2])


class BoundFamily(str, enum.Enum):
    DEPOLARIZING_GHZ_DIAG = "depolarizing_ghz_diag"
    DEPOLARIZING_TWO_QUBIT_ANY = "depolarizing_two_qubit"
    DEPHASING = "dephasing"
    THERMAL_STATE_DEPENDENT = "thermal_state_dependent"
    THERMAL_UNIFORM = "thermal_uniform"


@dataclass(frozen=True)
class BoundQuery:
    family: BoundFamily
    num_qubits: int
    p: float
    nbar: float | None = None
    diffusive: bool = False
    alpha: complex | None = None
    beta: complex | None = None
    kappa: int | None = None

    def __post_init__(self):
        family = BoundFamily(self.family)
        object.__setattr__(self, "family", family)
        _check(self.num_qubits, self.p)
        if family is BoundFamily.DEPOLARIZING_TWO_QUBIT_ANY and self.num_qubits != 2:
            raise DomainError("the all-states depolarizing bound is only proven for N = 2")
        if family in (BoundFamily.THERMAL_STATE_DEPENDENT, BoundFamily.THERMAL_UNIFORM):
            thermal_prefactors(self.nbar, self.diffusive)
        if family is BoundFamily.THERMAL_STATE_DEPENDENT:
            if self.alpha is None or self.beta is None or self.kappa is None:
                raise DomainError("state-dependent thermal bound needs alpha, beta and kappa")
            if not 0 <= self.kappa <= self.num_qubits:
                raise DomainError(f"kappa must lie in [0, {self.num_qubits}], got {self.kappa}")

    @property
    def relative(self) -> bool:
        """True if the multiplier applies to the initial entanglement, False if to E_max."""
        return self.family not in (BoundFamily.THERMAL_STATE_DEPENDENT, BoundFamily.THERMAL_UNIFORM)


def evaluate(query: BoundQuery) -> float:
    f = query.family
    if f in (BoundFamily.DEPOLARIZING_GHZ_DIAG, BoundFamily.DEPOLARIZING_TWO_QUBIT_ANY):
        return bound_depolarizing(query.num_qubits, query.p)
    if f is BoundFamily.DEPHASING:
        return bound_dephasing(query.num_qubits, query.p)
    if f is BoundFamily.THERMAL_UNIFORM:
        return bound_thermal_uniform(query.num_qubits, query.nbar, query.p, query.diffusive)
    return bound_thermal_state_dependent(query.alpha, query.beta, query.kappa, query.num_qubits,
                                         query.nbar, query.p, query.diffusive)
