import numpy as np
import pytest

from spinclone import (
    bloch_from_density,
    density_from_bloch,
    partial_trace,
    pauli_dot,
    spin_eigenstates,
    tensor,
)
from spinclone import build_geometry, clone_pure

from conftest import random_density, random_pure_state, random_unit_vector


def test_pauli_dot_z_axis():
    assert np.allclose(pauli_dot([0, 0, 1]), np.diag([1.0, -1.0]))


def test_pauli_dot_x_axis():
    assert np.allclose(pauli_dot([1, 0, 0]), np.array([[0, 1], [1, 0]]))


def test_pauli_dot_tilted_axis():
    eta = np.pi / 3
    op = pauli_dot([np.sin(eta), 0.0, np.cos(eta)])
    expected = np.array([[0.5, np.sqrt(3) / 2], [np.sqrt(3) / 2, -0.5]])
    assert np.allclose(op, expected, atol=1e-15)
    assert abs(np.trace(op)) < 1e-15
    assert abs(np.linalg.det(op) + 1.0) < 1e-15


def test_pauli_dot_rejects_non_unit():
    with pytest.raises(ValueError):
        pauli_dot([0.0, 0.0, 0.5])


def test_pauli_square_is_identity(rng):
    for _ in range(1000):
        op = pauli_dot(random_unit_vector(rng))
        assert np.max(np.abs(op @ op - np.eye(2))) < 1e-12


def test_spin_eigenstates_z_axis():
    plus, minus = spin_eigenstates([0, 0, 1])
    assert np.allclose(plus, [1, 0])
    assert np.allclose(minus, [0, 1])


def test_spin_eigenstates_minus_z_swaps_up_to_phase():
    plus, minus = spin_eigenstates([0, 0, -1])
    assert abs(abs(plus[1]) - 1) < 1e-15 and abs(plus[0]) < 1e-15
    assert abs(abs(minus[0]) - 1) < 1e-15 and abs(minus[1]) < 1e-15


def test_spin_eigenstates_x_axis():
    plus, minus = spin_eigenstates([1, 0, 0])
    r = 1 / np.sqrt(2)
    assert np.allclose(plus, [r, r])
    assert np.allclose(minus, [-r, r])


def test_spin_eigenstates_eigenpairs(rng):
    for _ in range(1000):
        n = random_unit_vector(rng)
        op = pauli_dot(n)
        plus, minus = spin_eigenstates(n)
        assert np.linalg.norm(op @ plus - plus) < 1e-12
        assert np.linalg.norm(op @ minus + minus) < 1e-12
        assert abs(np.vdot(plus, minus)) < 1e-12
        assert abs(np.vdot(plus, plus) - 1) < 1e-12
        assert abs(np.vdot(minus, minus) - 1) < 1e-12


def test_tensor_ordering():
    zero, one = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    assert np.allclose(tensor(zero, zero), [1, 0, 0, 0])
    assert np.allclose(tensor(zero, one), [0, 1, 0, 0])
    x_plus = np.array([1, 1]) / np.sqrt(2)
    assert np.allclose(tensor(x_plus, x_plus), [0.5, 0.5, 0.5, 0.5])


def test_partial_trace_product_state():
    zero, one = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    rho = np.kron(np.outer(zero, zero), np.outer(one, one))
    assert np.allclose(partial_trace(rho, keep=1), np.outer(zero, zero))
    assert np.allclose(partial_trace(rho, keep=2), np.outer(one, one))


def test_partial_trace_bell_state():
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    rho = np.outer(bell, bell.conj())
    assert np.allclose(partial_trace(rho, keep=1), np.eye(2) / 2)


def test_partial_trace_preserves_trace(rng):
    for _ in range(200):
        rho = random_density(rng, dim=4)
        for keep in (1, 2):
            assert abs(np.trace(partial_trace(rho, keep)).real - 1) < 1e-12


def test_partial_trace_rejects_non_density():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4, dtype=complex), keep=1)  # trace 4, not 1


def test_partial_trace_of_cloned_state_transfers_axis_component():
    # Clone the +1 eigenstate of a with equal sharpness 1/sqrt(2) on
    # orthogonal axes; the reduced state's a-component must shrink by alpha.
    alpha = 1 / np.sqrt(2)
    a, b = np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
    g = build_geometry(a, b, alpha, alpha)
    psi = spin_eigenstates(a)[0]
    joint = clone_pure(g, psi).joint
    reduced = partial_trace(np.outer(joint, joint.conj()), keep=1)
    c_in = bloch_from_density(np.outer(psi, psi.conj()))
    assert abs(a @ bloch_from_density(reduced) - alpha * (a @ c_in)) < 1e-12


def test_bloch_from_density_examples():
    assert np.allclose(bloch_from_density(np.eye(2) / 2), [0, 0, 0])
    assert np.allclose(bloch_from_density(np.diag([1.0, 0.0])), [0, 0, 1])
    shrunk = density_from_bloch([0, 0, 2 / 3])
    assert np.allclose(bloch_from_density(shrunk), [0, 0, 2 / 3])


def test_bloch_round_trip(rng):
    for _ in range(200):
        c = random_unit_vector(rng) * rng.uniform(0, 1)
        assert np.max(np.abs(bloch_from_density(density_from_bloch(c)) - c)) < 1e-12
