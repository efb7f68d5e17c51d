"""Single-qubit Kraus channels and their local N-fold application."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, ValidationError
from .qstate import NORM_TOL, DensityMatrix

I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)
PROJ0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
PROJ1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)
LOWER = np.array([[0, 1], [0, 0]], dtype=np.complex128)  # |0><1|
RAISE = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |1><0|


class Family(str, enum.Enum):
    DEPOLARIZING = "depolarizing"
    DEPHASING = "dephasing"
    THERMAL = "thermal"
    CUSTOM = "custom"


def _check_prob(p, name="p"):
    p = float(p)
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True, eq=False)
class SingleQubitChannel:
    """Kraus operators ``K_j`` (weights folded in) with ``sum K_j^dag K_j = 1``.

    Operators that vanish for the given parameters are kept, so index ``j``
    always matches the textbook numbering of the family.
    """

    kraus_ops: tuple
    family: Family = Family.CUSTOM
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        ops = []
        for K in self.kraus_ops:
            K = np.array(K, dtype=np.complex128, copy=True)
            if K.shape != (2, 2):
                raise ValidationError(f"Kraus operators must be 2x2, got {K.shape}")
            if not np.all(np.isfinite(K)):
                raise ValidationError("Kraus operator contains NaN or inf")
            K.flags.writeable = False
            ops.append(K)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        completeness = sum(K.conj().T @ K for K in ops)
        err = float(np.max(np.abs(completeness - I2)))
        if err > NORM_TOL:
            raise ValidationError(f"Kraus operators are not complete (deviation {err:.3e})")
        object.__setattr__(self, "kraus_ops", tuple(ops))
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", dict(self.params))

    def active_ops(self):
        return [K for K in self.kraus_ops if np.any(K != 0)]

    def superoperator(self) -> np.ndarray:
        """Tensor ``S[a, b, c, d] = sum_j K[a, c] conj(K[b, d])``.

        ``rho'[a, b] = sum_cd S[a, b, c, d] rho[c, d]`` on a single qubit.
        """
        S = np.zeros((2, 2, 2, 2), dtype=np.complex128)
        for K in self.active_ops():
            S += np.einsum("ac,bd->abcd", K, K.conj())
        return S

    def is_identity(self) -> bool:
        ops = self.active_ops()
        return len(ops) == 1 and np.array_equal(ops[0], I2)

    def apply_single(self, rho: np.ndarray) -> np.ndarray:
        return sum(K @ rho @ K.conj().T for K in self.kraus_ops)


def identity_channel() -> SingleQubitChannel:
    return SingleQubitChannel((I2,), Family.CUSTOM, {})


def depolarizing(p: float) -> SingleQubitChannel:
    """Pauli form ``sqrt(s_j) sigma_j`` with ``s_0 = 1 - 3p/4`` and ``s_{1,2,3} = p/4``."""
    p = _check_prob(p)
    s0 = 1.0 - 0.75 * p
    s = 0.25 * p
    weights = (s0, s, s, s)
    ops = tuple(math.sqrt(w) * P for w, P in zip(weights, PAULIS))
    return SingleQubitChannel(ops, Family.DEPOLARIZING, {"p": p})


def dephasing(p: float) -> SingleQubitChannel:
    p = _check_prob(p)
    ops = (math.sqrt(1.0 - p) * I2, math.sqrt(p) * PROJ0, math.sqrt(p) * PROJ1)
    return SingleQubitChannel(ops, Family.DEPHASING, {"p": p})


def thermal_prefactors(nbar: float | None, diffusive: bool = False) -> tuple[float, float]:
    """Return ``((nbar+1)/(2nbar+1), nbar/(2nbar+1))``; both are 1/2 in the diffusive limit."""
    if diffusive:
        return 0.5, 0.5
    if nbar is None:
        raise DomainError("nbar is required unless the diffusive limit is requested")
    nbar = float(nbar)
    if math.isnan(nbar) or nbar < 0 or math.isinf(nbar):
        raise DomainError(f"nbar must be a finite non-negative number, got {nbar}")
    return (nbar + 1.0) / (2.0 * nbar + 1.0), nbar / (2.0 * nbar + 1.0)


def thermal(nbar: float | None, p: float, diffusive: bool = False) -> SingleQubitChannel:
    """Born-Markov thermal bath with mean occupation ``nbar``.

    ``nbar = 0`` is amplitude damping. ``diffusive=True`` takes the
    infinite-temperature limit, where both prefactors tend to ``1/2``.
    """
    p = _check_prob(p)
    down, up = thermal_prefactors(nbar, diffusive)
    sd, su = math.sqrt(down), math.sqrt(up)
    k0 = sd * (PROJ0 + math.sqrt(1.0 - p) * PROJ1)
    k1 = sd * math.sqrt(p) * LOWER
    k2 = su * (math.sqrt(1.0 - p) * PROJ0 + PROJ1)
    k3 = su * math.sqrt(p) * RAISE
    params = {"p": p, "nbar": math.inf if diffusive else float(nbar), "diffusive": bool(diffusive)}
    return SingleQubitChannel((k0, k1, k2, k3), Family.THERMAL, params)


def _apply_superop(t: np.ndarray, S: np.ndarray, q: int, n: int) -> np.ndarray:
    # t has 2n axes: row bits 0..n-1 then column bits n..2n-1.
    out = np.tensordot(S, t, axes=([2, 3], [q, n + q]))
    return np.moveaxis(out, (0, 1), (q, n + q))


def _sweep(rho: DensityMatrix, channels: Sequence[SingleQubitChannel]) -> DensityMatrix:
    n = rho.num_qubits
    d = rho.dim
    t = rho.elements.reshape((2,) * (2 * n))
    for q, ch in enumerate(channels):
        if ch.is_identity():
            continue
        t = _apply_superop(t, ch.superoperator(), q, n)
    out = np.ascontiguousarray(t).reshape(d, d)
    # Restore exact hermiticity lost to rounding in the contraction.
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(n, out)


def apply_local(rho: DensityMatrix, channel: SingleQubitChannel) -> DensityMatrix:
    """Apply ``channel`` independently to every qubit of ``rho``.

    Works one qubit at a time on the ``(row bit, column bit)`` pair, so the
    cost is ``O(N 4**N)`` and the ``|K|**N`` global Kraus set is never built.
    """
    if not isinstance(rho, DensityMatrix):
        raise DomainError("apply_local expects a DensityMatrix")
    if channel.is_identity():
        return rho
    return _sweep(rho, [channel] * rho.num_qubits)


def apply_local_heterogeneous(rho: DensityMatrix, channels: Sequence[SingleQubitChannel]) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        raise DomainError("apply_local_heterogeneous expects a DensityMatrix")
    if len(channels) != rho.num_qubits:
        raise DomainError(f"need {rho.num_qubits} channels, got {len(channels)}")
    if all(ch.is_identity() for ch in channels):
        return rho
    return _sweep(rho, list(channels))


# -- time parameterizations ------------------------------------------------

class TimeModel(str, enum.Enum):
    EXPONENTIAL_DECAY = "exponential"
    RABI_OSCILLATION = "rabi"
    DIFFUSIVE_LINEAR = "diffusive"


@dataclass(frozen=True)
class TimeMap:
    """Relates elapsed time to the event probability ``p``.

    ``rate`` is the decay rate for ``exponential``, the vacuum Rabi frequency
    for ``rabi`` and the diffusion constant for ``diffusive``.
    """

    model: TimeModel
    rate: float

    def __post_init__(self):
        object.__setattr__(self, "model", TimeModel(self.model))
        rate = float(self.rate)
        if math.isnan(rate) or rate < 0:
            raise DomainError(f"rate must be non-negative, got {self.rate}")
        object.__setattr__(self, "rate", rate)


def time_to_p(tmap: TimeMap, t: float) -> float:
    t = float(t)
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be non-negative, got {t}")
    if tmap.model is TimeModel.EXPONENTIAL_DECAY:
        p = -math.expm1(-tmap.rate * t / 2.0)
    elif tmap.model is TimeModel.RABI_OSCILLATION:
        p = math.sin(tmap.rate * t / 2.0) ** 2
    else:
        p = -math.expm1(-tmap.rate * t)
    return min(1.0, max(0.0, p))


# -- config-level description ----------------------------------------------

@dataclass(frozen=True)
class ChannelSpec:
    """Noise family with its fixed parameters; ``p`` may be supplied later."""

    family: Family
    p: float | None = None
    nbar: float | None = None
    diffusive: bool = False

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            raise DomainError(f"unknown channel family {self.family!r}") from None
        if family is Family.CUSTOM:
            raise DomainError("custom channels cannot be described by a ChannelSpec")
        object.__setattr__(self, "family", family)
        if self.p is not None:
            object.__setattr__(self, "p", _check_prob(self.p))
        if family is Family.THERMAL:
            thermal_prefactors(self.nbar, self.diffusive)
        elif self.nbar is not None or self.diffusive:
            raise DomainError(f"nbar/diffusive only apply to the thermal family, not {family.value}")

    def at(self, p: float | None = None) -> SingleQubitChannel:
        p = self.p if p is None else p
        if p is None:
            raise DomainError("no probability p given for the channel")
        if self.family is Family.DEPOLARIZING:
            return depolarizing(p)
        if self.family is Family.DEPHASING:
            return dephasing(p)
        return thermal(self.nbar, p, self.diffusive)

    def to_dict(self) -> dict:
        out = {"family": self.family.value}
        if self.p is not None:
            out["p"] = self.p
        if self.family is Family.THERMAL:
            if self.diffusive:
                out["diffusive"] = True
            else:
                out["nbar"] = self.nbar
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "ChannelSpec":
        unknown = set(obj) - {"family", "p", "nbar", "diffusive"}
        if unknown:
            raise DomainError(f"unknown channel keys: {sorted(unknown)}")
        if "family" not in obj:
            raise DomainError("channel needs a 'family'")
        return cls(obj["family"], obj.get("p"), obj.get("nbar"), bool(obj.get("diffusive", False)))
