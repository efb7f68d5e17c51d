"""Pure states, density matrices and the generalized GHZ families.

Basis labels follow the big-endian convention: qubit 0 is the most
significant bit, so the three-qubit string ``010`` is the label 2.
"""

from __future__ import annotations

import cmath
import json
import math
import struct
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import DomainError, ResourceError, ValidationError

NORM_TOL = 1e-12
PSD_TOL = 1e-10

#: Dense storage needs 16 * 4**N bytes per matrix; raise via ``set_max_qubits``.
MAX_QUBITS = 10


def set_max_qubits(n: int) -> None:
    global MAX_QUBITS
    if n < 1:
        raise DomainError(f"qubit cap must be positive, got {n}")
    MAX_QUBITS = int(n)


def required_bytes(num_qubits: int) -> int:
    """Estimated peak memory of one channel application plus eigensolver workspace."""
    dim_sq = 4**num_qubits
    return 2 * 16 * dim_sq + 16 * dim_sq


def check_num_qubits(num_qubits: int) -> int:
    if isinstance(num_qubits, bool) or int(num_qubits) != num_qubits or num_qubits < 1:
        raise DomainError(f"number of qubits must be a positive integer, got {num_qubits!r}")
    num_qubits = int(num_qubits)
    if num_qubits > MAX_QUBITS:
        need = required_bytes(num_qubits)
        raise ResourceError(
            f"N={num_qubits} exceeds the configured cap of {MAX_QUBITS} qubits; "
            f"dense evolution needs about {need / 2**30:.2f} GiB "
            f"({need} bytes). Raise max_qubits only if that much memory is available."
        )
    return num_qubits


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = check_num_qubits(self.num_qubits)
        amps = _frozen(self.amplitudes)
        if amps.shape != (2**n,):
            raise ValidationError(f"expected {2**n} amplitudes for N={n}, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes contain NaN or inf")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized: sum |a|^2 = {norm!r}")
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, num_qubits: int, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValidationError("cannot normalize the zero vector")
        return cls(num_qubits, amps / norm)

    @property
    def dim(self) -> int:
        return 2**self.num_qubits


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Dense ``2**N x 2**N`` density operator.

    Construction checks shape, hermiticity and unit trace. Positivity costs a
    full eigendecomposition, so it is only checked when ``check_psd`` is set
    (or later via :meth:`min_eigenvalue`).
    """

    num_qubits: int
    elements: np.ndarray
    check_psd: bool = field(default=False, repr=False)

    def __post_init__(self):
        n = check_num_qubits(self.num_qubits)
        mat = _frozen(self.elements)
        d = 2**n
        if mat.shape != (d, d):
            raise ValidationError(f"expected a {d}x{d} matrix for N={n}, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValidationError("matrix contains NaN or inf")
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > NORM_TOL:
            raise ValidationError(f"matrix is not Hermitian (max |rho - rho^dag| = {herm:.3e})")
        tr = np.trace(mat)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "elements", mat)
        if self.check_psd:
            lo = self.min_eigenvalue()
            if lo < -PSD_TOL:
                raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})")

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.elements)[0])

    def purity(self) -> float:
        return float(np.real(np.vdot(self.elements, self.elements)))

    def mix(self, other: "DensityMatrix", weight: float) -> "DensityMatrix":
        """Return ``weight * self + (1 - weight) * other``."""
        if other.num_qubits != self.num_qubits:
            raise DomainError("cannot mix states of different size")
        if not 0.0 <= weight <= 1.0:
            raise DomainError(f"mixing weight must lie in [0, 1], got {weight}")
        return DensityMatrix(self.num_qubits, weight * self.elements + (1.0 - weight) * other.elements)


def bitflip(k: int, num_qubits: int) -> int:
    """Bitwise complement of the basis label ``k`` on ``num_qubits`` bits."""
    if num_qubits < 1:
        raise DomainError(f"number of qubits must be positive, got {num_qubits}")
    full = (1 << num_qubits) - 1
    if not 0 <= k <= full:
        raise DomainError(f"label {k} out of range for N={num_qubits}")
    return full ^ k


@dataclass(frozen=True)
class GhzSpec:
    """Parameters of ``alpha |k> + parity * beta |~k>``.

    The pair ``(k, ~k)`` and ``(~k, k)`` describe the same ray, so the
    constructor swaps to ``k < ~k`` (exchanging alpha and beta; the global
    sign picked up is irrelevant for the projector).
    """

    num_qubits: int
    label_k: int
    parity: int = 1
    alpha: complex = 1 / math.sqrt(2)
    beta: complex = 1 / math.sqrt(2)

    def __post_init__(self):
        n = check_num_qubits(self.num_qubits)
        if self.parity not in (1, -1):
            raise ValidationError(f"parity must be +1 or -1, got {self.parity!r}")
        alpha, beta = complex(self.alpha), complex(self.beta)
        if alpha == 0 or beta == 0:
            raise ValidationError("alpha and beta must both be nonzero")
        if not (cmath.isfinite(alpha) and cmath.isfinite(beta)):
            raise ValidationError("alpha and beta must be finite")
        norm = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
        k = int(self.label_k)
        kbar = bitflip(k, n)
        if k > kbar:
            k, alpha, beta = kbar, beta, alpha
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "label_k", k)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def label_kbar(self) -> int:
        return bitflip(self.label_k, self.num_qubits)

    @classmethod
    def balanced(cls, num_qubits: int, label_k: int = 0, parity: int = 1) -> "GhzSpec":
        return cls(num_qubits, label_k, parity, 1 / math.sqrt(2), 1 / math.sqrt(2))


@dataclass(frozen=True)
class GhzMixtureSpec:
    """Weights of a GHZ-diagonal mixture over ``(label_k, parity)`` terms.

    All terms share ``alpha`` and ``beta``. Labels are not canonicalized here:
    with unequal amplitudes ``(k, +)`` and ``(~k, +)`` are different states.
    """

    num_qubits: int
    alpha: complex
    beta: complex
    weights: Mapping[tuple[int, int], float]

    def __post_init__(self):
        n = check_num_qubits(self.num_qubits)
        clean = {}
        for (k, parity), lam in dict(self.weights).items():
            if parity not in (1, -1):
                raise ValidationError(f"parity must be +1 or -1, got {parity!r}")
            bitflip(int(k), n)
            lam = float(lam)
            if not lam >= 0.0:
                raise ValidationError(f"mixture weight for {(k, parity)} is negative or NaN: {lam}")
            clean[(int(k), int(parity))] = clean.get((int(k), int(parity)), 0.0) + lam
        total = math.fsum(clean.values())
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"mixture weights sum to {total!r}, expected 1")
        # Validates alpha/beta once for every term.
        GhzSpec(n, 0, 1, self.alpha, self.beta)
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "weights", clean)


def make_generalized_ghz(spec: GhzSpec) -> PureState:
    amps = np.zeros(2**spec.num_qubits, dtype=np.complex128)
    amps[spec.label_k] = spec.alpha
    amps[spec.label_kbar] = spec.parity * spec.beta
    return PureState(spec.num_qubits, amps)


def make_ghz_diagonal(spec: GhzMixtureSpec) -> DensityMatrix:
    n = spec.num_qubits
    rho = np.zeros((2**n, 2**n), dtype=np.complex128)
    a, b = spec.alpha, spec.beta
    for (k, parity), lam in spec.weights.items():
        if lam == 0.0:
            continue
        kbar = bitflip(k, n)
        rho[k, k] += lam * abs(a) ** 2
        rho[kbar, kbar] += lam * abs(b) ** 2
        coh = lam * parity * a * b.conjugate()
        rho[k, kbar] += coh
        rho[kbar, k] += coh.conjugate()
    return DensityMatrix(n, rho)


def density_from_pure(psi: PureState) -> DensityMatrix:
    amps = psi.amplitudes
    return DensityMatrix(psi.num_qubits, np.outer(amps, amps.conj()))


# -- serialization ---------------------------------------------------------

_MAGIC = b"GHZS"
_TAGS = {"pure": 0, "density": 1}
_HEADER = struct.Struct("<4sII")


def _payload(state):
    if isinstance(state, PureState):
        return "pure", state.amplitudes
    if isinstance(state, DensityMatrix):
        return "density", state.elements
    raise TypeError(f"cannot serialize {type(state).__name__}")


def _build(kind, n, data):
    d = 2**n
    if kind == "pure":
        return PureState(n, data.reshape(d))
    return DensityMatrix(n, data.reshape(d, d))


def state_to_bytes(state) -> bytes:
    """Header ``(magic, N, tag)`` then row-major little-endian complex128 pairs."""
    kind, data = _payload(state)
    header = _HEADER.pack(_MAGIC, state.num_qubits, _TAGS[kind])
    return header + np.ascontiguousarray(data, dtype="<c16").tobytes()


def state_from_bytes(blob: bytes):
    if len(blob) < _HEADER.size:
        raise ValidationError("truncated state header")
    magic, n, tag = _HEADER.unpack_from(blob)
    if magic != _MAGIC:
        raise ValidationError("not a serialized state (bad magic)")
    kind = {v: k for k, v in _TAGS.items()}.get(tag)
    if kind is None:
        raise ValidationError(f"unknown state tag {tag}")
    n = check_num_qubits(n)
    count = 2**n if kind == "pure" else 4**n
    body = blob[_HEADER.size:]
    if len(body) != 16 * count:
        raise ValidationError(f"expected {16 * count} payload bytes, got {len(body)}")
    return _build(kind, n, np.frombuffer(body, dtype="<c16").astype(np.complex128))


def state_to_json(state) -> str:
    kind, data = _payload(state)
    flat = np.ravel(data)
    return json.dumps(
        {
            "num_qubits": state.num_qubits,
            "type": kind,
            "data": [[float(z.real), float(z.imag)] for z in flat],
        }
    )


def state_from_json(text: str):
    obj = json.loads(text)
    try:
        n = check_num_qubits(obj["num_qubits"])
        kind = obj["type"]
        pairs = np.asarray(obj["data"], dtype=float)
    except KeyError as exc:
        raise ValidationError(f"state JSON is missing field {exc}") from None
    if kind not in _TAGS:
        raise ValidationError(f"unknown state type {kind!r}")
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValidationError("state data must be a list of [re, im] pairs")
    expected = 2**n if kind == "pure" else 4**n
    if pairs.shape[0] != expected:
        raise ValidationError(f"expected {expected} entries for N={n}, got {pairs.shape[0]}")
    return _build(kind, n, pairs[:, 0] + 1j * pairs[:, 1])


def load_state(path) -> DensityMatrix:
    """Read a state file (binary or JSON) and return it as a density matrix."""
    with open(path, "rb") as fh:
        blob = fh.read()
    state = state_from_bytes(blob) if blob[:4] == _MAGIC else state_from_json(blob.decode())
    if isinstance(state, PureState):
        return density_from_pure(state)
    return state
