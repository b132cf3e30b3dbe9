import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qess import quantum
from qess.eisert import QuantumStrategy, strategy_unitary
from qess.errors import DomainError, ValidationError

angles = st.floats(0, 2 * math.pi, allow_nan=False)


def random_su2(alpha, beta, delta):
    return np.array(
        [[np.exp(1j * alpha) * np.cos(delta), np.exp(1j * beta) * np.sin(delta)],
         [-np.exp(-1j * beta) * np.sin(delta), np.exp(-1j * alpha) * np.cos(delta)]]
    )


def test_tensor_identity():
    assert np.array_equal(quantum.tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_sigma_x_is_antidiagonal():
    np.testing.assert_array_equal(quantum.tensor(quantum.SIGMA_X, quantum.SIGMA_X), np.fliplr(np.eye(4)))


def test_tensor_of_half_rotations_spreads_cc_evenly():
    u = strategy_unitary(QuantumStrategy.one(math.pi / 2))
    out = quantum.tensor(u, u) @ np.array([1, 0, 0, 0])
    # by hand: (c^2, -cs, -sc, s^2) with c = s = 1/sqrt(2)
    np.testing.assert_allclose(out, [0.5, -0.5, -0.5, 0.5], atol=1e-15)


def test_tensor_names_the_non_unitary_operand():
    with pytest.raises(ValidationError, match="v is not unitary"):
        quantum.tensor(np.eye(2), 2 * np.eye(2))
    with pytest.raises(ValidationError, match="u is not unitary"):
        quantum.tensor([[1, 1], [0, 1]], np.eye(2))


@settings(max_examples=50, deadline=None)
@given(angles, angles, angles, angles, angles, angles)
def test_tensor_is_a_homomorphism(a1, b1, d1, a2, b2, d2):
    u, v = random_su2(a1, b1, d1), random_su2(a2, b2, d2)
    u2, v2 = random_su2(b1, d1, a2), random_su2(d2, a1, b2)
    lhs = quantum.tensor(u, v) @ quantum.tensor(u2, v2)
    rhs = quantum.tensor(u @ u2, v @ v2)
    assert np.linalg.norm(lhs - rhs) <= 1e-12
    assert quantum.unitarity_defect(lhs) <= 1e-12


def test_entangler_limits():
    np.testing.assert_allclose(quantum.entangler(0.0), np.eye(4), atol=0)
    J = quantum.entangler(math.pi / 2)
    np.testing.assert_allclose(J[:, 0], np.array([1, 0, 0, 1j]) / math.sqrt(2), atol=1e-15)
    assert quantum.unitarity_defect(J) <= 1e-12


def test_entangler_is_swap_symmetric():
    swap = np.eye(4)[[0, 2, 1, 3]]
    for g in np.linspace(0, math.pi / 2, 7):
        J = quantum.entangler(g)
        assert np.linalg.norm(swap @ J @ swap - J) <= 1e-15


def test_entangled_state_has_maximal_reduced_entropy():
    assert quantum.reduced_entropy(quantum.entangler(math.pi / 2)[:, 0]) == pytest.approx(math.log(2), abs=1e-12)
    assert quantum.reduced_entropy(np.array([1, 0, 0, 0])) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("gamma", [-0.1, math.pi / 2 + 1e-9, float("nan")])
def test_entangler_rejects_out_of_range(gamma):
    with pytest.raises(DomainError):
        quantum.entangler(gamma)


def test_measure_pure_cc():
    rho = quantum.pure_density([1, 0, 0, 0])
    np.testing.assert_array_equal(quantum.measure_probabilities(rho), [1, 0, 0, 0])


def test_maximally_mixed_is_basis_independent():
    basis = [quantum.entangler(0.7)[:, k] for k in range(4)]
    np.testing.assert_allclose(quantum.measure_probabilities(np.eye(4) / 4, basis), [0.25] * 4, atol=1e-15)


def test_measure_bell_state():
    psi = np.array([1, 0, 0, 1j]) / math.sqrt(2)
    np.testing.assert_allclose(quantum.measure_probabilities(quantum.pure_density(psi)), [0.5, 0, 0, 0.5], atol=1e-15)


def test_measure_rejects_bad_basis_and_state():
    with pytest.raises(ValidationError, match="orthonormal"):
        quantum.measure_probabilities(np.eye(4) / 4, [np.array([1, 0, 0, 0])] * 4)
    with pytest.raises(ValidationError, match="trace"):
        quantum.measure_probabilities(np.eye(4) / 2)
    with pytest.raises(ValidationError, match="positive"):
        quantum.measure_probabilities(np.diag([1.5, -0.5, 0, 0]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=8, max_size=8), angles, angles, angles)
def test_probabilities_are_conserved(vec, a, b, d):
    psi = np.array(vec[:4]) + 1j * np.array(vec[4:])
    if np.linalg.norm(psi) < 1e-3:
        psi = np.array([1, 0, 0, 0], dtype=complex)
    psi = psi / np.linalg.norm(psi)
    rho = quantum.check_density(quantum.pure_density(psi))
    basis = quantum.tensor(random_su2(a, b, d), random_su2(d, a, b)) @ quantum.entangler(b % (math.pi / 2))
    probs = quantum.measure_probabilities(rho, basis)
    assert abs(probs.sum() - 1) <= 1e-9
    assert np.all((probs >= 0) & (probs <= 1))
