import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghz_decay import qstate
from ghz_decay.errors import DomainError, ResourceError, ValidationError
from ghz_decay.qstate import (
    DensityMatrix,
    GhzMixtureSpec,
    GhzSpec,
    PureState,
    bitflip,
    density_from_pure,
    make_generalized_ghz,
    make_ghz_diagonal,
)

S = 1 / math.sqrt(2)


@pytest.mark.parametrize("k, n, expected", [(2, 3, 5), (0, 4, 15), (5, 3, 2)])
def test_bitflip_examples(k, n, expected):
    assert bitflip(k, n) == expected


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_bitflip_involution(nk):
    n, k = nk
    assert bitflip(bitflip(k, n), n) == k
    assert bitflip(k, n) ^ k == 2**n - 1


@pytest.mark.parametrize("k", [-1, 8])
def test_bitflip_out_of_range(k):
    with pytest.raises(DomainError):
        bitflip(k, 3)


def test_ghz_three_qubits_k0():
    amps = make_generalized_ghz(GhzSpec(3, 0, 1, S, S)).amplitudes
    expected = np.zeros(8)
    expected[[0, 7]] = S
    np.testing.assert_array_equal(amps, expected)


def test_ghz_three_qubits_k2():
    amps = make_generalized_ghz(GhzSpec(3, 2, 1, S, S)).amplitudes
    assert amps[2] == pytest.approx(S) and amps[5] == pytest.approx(S)
    assert np.count_nonzero(amps) == 2


def test_ghz_odd_parity_unbalanced():
    amps = make_generalized_ghz(GhzSpec(2, 0, -1, 0.6, 0.8)).amplitudes
    np.testing.assert_allclose(amps, [0.6, 0, 0, -0.8])
    assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-12)


def test_ghz_canonical_representative_same_projector():
    spec = GhzSpec(3, 5, -1, 0.6, 0.8j)
    assert spec.label_k == 2 and spec.label_kbar == 5
    raw = np.zeros(8, dtype=complex)
    raw[5], raw[2] = 0.6, -0.8j
    proj = np.outer(raw, raw.conj())
    np.testing.assert_allclose(density_from_pure(make_generalized_ghz(spec)).elements, proj, atol=1e-15)


@pytest.mark.parametrize("alpha, beta", [(0, 1), (1, 0), (0.6, 0.6), (1, 1)])
def test_ghz_rejects_bad_amplitudes(alpha, beta):
    with pytest.raises(ValidationError):
        GhzSpec(2, 0, 1, alpha, beta)


def test_ghz_rejects_bad_parity():
    with pytest.raises(ValidationError):
        GhzSpec(2, 0, 0, S, S)


@given(st.floats(0.05, 1.5), st.floats(-math.pi, math.pi), st.integers(2, 6), st.data())
def test_parity_partner_overlap(theta, phase, n, data):
    alpha = math.cos(theta) + 0j
    beta = math.sin(theta) * complex(math.cos(phase), math.sin(phase))
    if abs(alpha) < 1e-3 or abs(beta) < 1e-3:
        return
    k = data.draw(st.integers(0, 2**n - 1))
    spec_plus = GhzSpec(n, k, 1, alpha, beta)
    plus = make_generalized_ghz(spec_plus).amplitudes
    minus = make_generalized_ghz(GhzSpec(n, k, -1, alpha, beta)).amplitudes
    overlap = np.vdot(plus, minus)
    # amplitudes as stored after canonicalization to k < ~k
    expected = abs(spec_plus.alpha) ** 2 - abs(spec_plus.beta) ** 2
    assert overlap == pytest.approx(expected, abs=1e-12)
    assert (abs(overlap) < 1e-12) == (abs(abs(alpha) - abs(beta)) < 1e-12)


def test_ghz_diagonal_single_weight_is_projector():
    mix = GhzMixtureSpec(3, S, S, {(0, 1): 1.0})
    proj = density_from_pure(make_generalized_ghz(GhzSpec(3, 0, 1, S, S))).elements
    np.testing.assert_allclose(make_ghz_diagonal(mix).elements, proj, atol=1e-15)


def test_ghz_diagonal_opposite_parities_cancel():
    rho = make_ghz_diagonal(GhzMixtureSpec(2, S, S, {(0, 1): 0.5, (0, -1): 0.5})).elements
    # explicit sum of the two 4x4 projectors
    plus = 0.5 * np.array([[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]])
    minus = 0.5 * np.array([[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]])
    np.testing.assert_allclose(rho, 0.5 * plus + 0.5 * minus, atol=1e-15)
    np.testing.assert_allclose(rho, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_ghz_diagonal_rank_two():
    rho = make_ghz_diagonal(GhzMixtureSpec(3, S, S, {(0, 1): 0.5, (2, 1): 0.5}))
    assert np.trace(rho.elements) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.matrix_rank(rho.elements, tol=1e-10) == 2


def test_ghz_diagonal_support_only_on_pairs(rng):
    n = 4
    keys = [(k, s) for k in range(2**n) for s in (1, -1)]
    w = rng.random(len(keys))
    w /= w.sum()
    w[-1] = 1.0 - w[:-1].sum()
    rho = make_ghz_diagonal(GhzMixtureSpec(n, 0.6, 0.8j, dict(zip(keys, w)))).elements
    for r in range(2**n):
        for c in range(2**n):
            if c not in (r, bitflip(r, n)):
                assert rho[r, c] == 0
    DensityMatrix(n, rho, check_psd=True)


def test_ghz_diagonal_weights_must_sum_to_one():
    with pytest.raises(ValidationError):
        GhzMixtureSpec(2, S, S, {(0, 1): 0.5, (1, 1): 0.4})
    with pytest.raises(ValidationError):
        GhzMixtureSpec(2, S, S, {(0, 1): 1.5, (1, 1): -0.5})


def test_density_from_pure_examples():
    zero = density_from_pure(PureState(1, [1, 0]))
    np.testing.assert_array_equal(zero.elements, np.diag([1, 0]))
    bell = density_from_pure(PureState(2, [S, 0, 0, S])).elements
    expected = np.zeros((4, 4))
    for r, c in [(0, 0), (0, 3), (3, 0), (3, 3)]:
        expected[r, c] = 0.5
    np.testing.assert_allclose(bell, expected, atol=1e-15)


def test_density_from_pure_purity(rng):
    for n in (1, 3, 5):
        v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        rho = density_from_pure(PureState.normalized(n, v))
        assert rho.purity() == pytest.approx(1.0, abs=1e-12)
        assert np.trace(rho.elements) == pytest.approx(1.0, abs=1e-12)


def test_ghz_projector_trace_and_purity(rng):
    for n in range(2, 7):
        a = rng.normal() + 1j * rng.normal()
        b = rng.normal() + 1j * rng.normal()
        norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        spec = GhzSpec(n, int(rng.integers(2**n)), int(rng.choice([1, -1])), a / norm, b / norm)
        rho = density_from_pure(make_generalized_ghz(spec))
        assert np.trace(rho.elements) == pytest.approx(1.0, abs=1e-12)
        assert rho.purity() == pytest.approx(1.0, abs=1e-12)


def test_pure_state_validation():
    with pytest.raises(ValidationError):
        PureState(2, [1, 0, 0])
    with pytest.raises(ValidationError):
        PureState(1, [1, 1])
    with pytest.raises(DomainError):
        PureState(0, [1])


def test_density_validation():
    with pytest.raises(ValidationError):
        DensityMatrix(1, [[1, 0.5], [0.4, 0]])
    with pytest.raises(ValidationError):
        DensityMatrix(1, [[0.6, 0], [0, 0.6]])
    with pytest.raises(ValidationError):
        DensityMatrix(1, [[1.5, 0], [0, -0.5]], check_psd=True)


def test_states_are_immutable():
    psi = PureState(1, [1, 0])
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


def test_qubit_cap():
    with pytest.raises(ResourceError, match="bytes"):
        PureState(qstate.MAX_QUBITS + 1, np.zeros(2))


def test_binary_roundtrip(rng):
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi = PureState.normalized(3, v)
    back = qstate.state_from_bytes(qstate.state_to_bytes(psi))
    np.testing.assert_array_equal(back.amplitudes, psi.amplitudes)
    rho = density_from_pure(psi)
    blob = qstate.state_to_bytes(rho)
    assert len(blob) == 12 + 16 * 64
    np.testing.assert_array_equal(qstate.state_from_bytes(blob).elements, rho.elements)


def test_binary_layout_is_row_major_pairs():
    rho = DensityMatrix(1, [[0.25, 0.5j], [-0.5j, 0.75]])
    blob = qstate.state_to_bytes(rho)
    magic, n, tag = qstate._HEADER.unpack_from(blob)
    assert (magic, n, tag) == (b"GHZS", 1, 1)
    doubles = np.frombuffer(blob[12:], dtype="<f8")
    np.testing.assert_array_equal(doubles, [0.25, 0, 0, 0.5, 0, -0.5, 0.75, 0])


def test_json_roundtrip(rng, tmp_path):
    spec = GhzSpec(3, 1, -1, 0.6, 0.8j)
    psi = make_generalized_ghz(spec)
    text = qstate.state_to_json(psi)
    np.testing.assert_array_equal(qstate.state_from_json(text).amplitudes, psi.amplitudes)
    path = tmp_path / "s.json"
    path.write_text(text)
    np.testing.assert_array_equal(qstate.load_state(path).elements, density_from_pure(psi).elements)
    path = tmp_path / "s.bin"
    path.write_bytes(qstate.state_to_bytes(psi))
    np.testing.assert_array_equal(qstate.load_state(path).elements, density_from_pure(psi).elements)


def test_corrupt_serialization():
    with pytest.raises(ValidationError):
        qstate.state_from_bytes(b"XXXX" + bytes(8))
    with pytest.raises(ValidationError):
        qstate.state_from_json('{"num_qubits": 1, "type": "pure", "data": [[1, 0]]}')
