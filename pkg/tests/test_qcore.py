import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakclock.errors import BasisError, DomainError
from weakclock.qcore import (LinearOperator, StateVector, apply, collective_sigma_z, identity,
                             inner, matrix_element, permute, sigma_z, spin_down, spin_state,
                             spin_up, tensor)

R2 = np.sqrt(2.0)


def test_tensor_basis_vectors():
    psi = tensor(spin_up("a"), spin_up("b"))
    assert np.array_equal(psi.amplitudes, [1, 0, 0, 0])
    assert psi.basis_label == (("a", 2), ("b", 2))


def test_tensor_identities():
    eye4 = tensor(identity([("a", 2)]), identity([("b", 2)]))
    assert np.array_equal(eye4.matrix, np.eye(4))


def test_tensor_operator_on_product_state():
    # explicit 4x4 matrix of sigma_z (x) I, rows |uu>,|ud>,|du>,|dd>
    by_hand = np.diag([1, 1, -1, -1])
    op = tensor(sigma_z("a"), identity([("b", 2)]))
    assert np.array_equal(op.matrix, by_hand)
    plus = spin_state(1 / R2, 1 / R2, "a")
    out = op @ tensor(plus, spin_down("b"))
    expected = tensor(spin_state(1 / R2, -1 / R2, "a"), spin_down("b"))
    np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=1e-15)
    np.testing.assert_allclose(by_hand @ np.array([0, 1, 0, 1]) / R2, [0, 1, 0, -1] / R2)


def test_inner_examples():
    assert inner(spin_up(), spin_up()) == 1
    assert inner(spin_up(), spin_down()) == 0
    a = spin_state(1 / R2, 1j / R2)
    assert inner(a, spin_down()) == pytest.approx(-1j / R2, abs=1e-15)


def test_inner_basis_mismatch():
    with pytest.raises(BasisError):
        inner(spin_up("a"), spin_up("b"))


def test_state_dimension_checked():
    with pytest.raises(BasisError):
        StateVector([1, 0, 0], (("s", 2),))
    with pytest.raises(DomainError):
        StateVector([1, 1], (("s", 2),), normalized=True)


def test_hermitian_flag_checked():
    with pytest.raises(DomainError):
        LinearOperator([[0, 1], [0, 0]], (("s", 2),), hermitian=True)


def test_collective_sigma_z_single_spin():
    op = collective_sigma_z(1, 1.0)
    np.testing.assert_array_equal(op.matrix, np.diag([1, -1]))


def test_collective_sigma_z_two_spins():
    ev = np.sort(np.linalg.eigvalsh(collective_sigma_z(2, 1.0).matrix))
    np.testing.assert_allclose(ev, [-1, 0, 0, 1], atol=1e-15)


def _kron_sum_oracle(n, c):
    sz = np.diag([1.0, -1.0])
    total = np.zeros((2 ** n, 2 ** n))
    for i in range(n):
        term = np.array([[1.0]])
        for j in range(n):
            term = np.kron(term, sz if i == j else np.eye(2))
        total += term
    return c / n * total


def test_collective_sigma_z_three_spins_dense_oracle():
    op = collective_sigma_z(3, 2.0)
    np.testing.assert_allclose(op.matrix, _kron_sum_oracle(3, 2.0), atol=1e-15)
    ev = np.sort(np.linalg.eigvalsh(_kron_sum_oracle(3, 2.0)))
    np.testing.assert_allclose(ev, [-2, -2 / 3, -2 / 3, -2 / 3, 2 / 3, 2 / 3, 2 / 3, 2], atol=1e-14)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(op.matrix)), ev, atol=1e-14)


@pytest.mark.parametrize("n", range(1, 7))
def test_collective_sigma_z_entries_by_bitstring(n):
    c = 1.5
    diag = np.diag(collective_sigma_z(n, c).matrix).real
    for idx in range(2 ** n):
        bits = format(idx, f"0{n}b")
        n_up, n_down = bits.count("0"), bits.count("1")
        assert diag[idx] == pytest.approx(c / n * (n_up - n_down), abs=1e-15)
    assert np.count_nonzero(collective_sigma_z(n, c).matrix - np.diag(diag)) == 0


def test_collective_sigma_z_rejects_zero():
    with pytest.raises(DomainError):
        collective_sigma_z(0)


def test_apply_on_subset_matches_kron():
    rng = np.random.default_rng(1)
    label = (("a", 2), ("b", 3), ("c", 2))
    psi = StateVector(rng.normal(size=12) + 1j * rng.normal(size=12), label)
    m = rng.normal(size=(4, 4))
    op = LinearOperator(m, (("c", 2), ("a", 2)))
    # oracle: build the full operator on (a, b, c) explicitly
    full = np.zeros((12, 12), dtype=complex)
    for a in range(2):
        for b in range(3):
            for c in range(2):
                for a2 in range(2):
                    for c2 in range(2):
                        full[a2 * 6 + b * 2 + c2, a * 6 + b * 2 + c] += m[c2 * 2 + a2, c * 2 + a]
    out = apply(op, psi, ["c", "a"])
    np.testing.assert_allclose(out.amplitudes, full @ psi.amplitudes, atol=1e-13)
    assert matrix_element(psi, op, psi, ["c", "a"]) == pytest.approx(
        np.vdot(psi.amplitudes, full @ psi.amplitudes), abs=1e-12)


def test_permute_roundtrip():
    psi = tensor(tensor(spin_up("a"), spin_state(0.6, 0.8, "b")), spin_down("c"))
    back = permute(permute(psi, ["c", "a", "b"]), ["a", "b", "c"])
    np.testing.assert_array_equal(back.amplitudes, psi.amplitudes)


def _states(dim):
    return st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                    min_size=dim, max_size=dim)


@settings(max_examples=50, deadline=None)
@given(_states(2), _states(3), _states(2))
def test_tensor_associative(a, b, c):
    A = StateVector(a, (("a", 2),))
    B = StateVector(b, (("b", 3),))
    C = StateVector(c, (("c", 2),))
    left = tensor(tensor(A, B), C)
    right = tensor(A, tensor(B, C))
    # equal up to the rounding of (ab)c versus a(bc)
    np.testing.assert_allclose(left.amplitudes, right.amplitudes, rtol=1e-14, atol=1e-300)
    assert left.basis_label == right.basis_label


@settings(max_examples=100, deadline=None)
@given(_states(4))
def test_inner_self_is_nonnegative_real(v):
    psi = StateVector(v, (("a", 2), ("b", 2)))
    val = inner(psi, psi)
    assert val.imag == 0.0
    assert val.real >= 0.0
    if val.real <= 1e-15:
        assert np.allclose(psi.amplitudes, 0.0, atol=1e-7)
    else:
        assert np.any(psi.amplitudes != 0)


_dyadic = st.integers(-64, 64).map(lambda k: k / 8.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(_dyadic, min_size=2, max_size=2), st.lists(_dyadic, min_size=3, max_size=3),
       st.lists(_dyadic, min_size=2, max_size=2))
def test_tensor_associative_exactly_for_representable_products(a, b, c):
    A = StateVector(a, (("a", 2),))
    B = StateVector(b, (("b", 3),))
    C = StateVector(c, (("c", 2),))
    assert np.array_equal(tensor(tensor(A, B), C).amplitudes, tensor(A, tensor(B, C)).amplitudes)
