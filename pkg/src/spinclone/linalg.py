"""Exact small-dimension complex linear algebra for one and two qubits.

Conventions used throughout the package:

* Single-qubit states are length-2 complex arrays, operators are 2x2.
* Two-qubit states are length-4 complex arrays in the product ordering
  (++, +-, -+, --) with the first qubit as the slow index, i.e.
  ``tensor(s1, s2) = np.kron(s1, s2)``.
* Spin eigenstates follow a fixed global-phase convention: for an axis
  n = (sin t cos f, sin t sin f, cos t) the +1 eigenstate of n.sigma is
  (cos(t/2), e^{if} sin(t/2)) and the -1 eigenstate is
  (-e^{-if} sin(t/2), cos(t/2)).  For axes in the x-z plane all
  amplitudes are real.

All functions are pure and allocate fresh arrays; there is no shared
mutable state, so everything here is safe for concurrent use.
"""

from __future__ import annotations

import numpy as np

# Validation tolerance for unit norms, hermiticity, trace and positivity.
ATOL = 1e-12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, PAULI, IDENTITY_2, IDENTITY_4):
    _m.setflags(write=False)


def as_unit_vector(n) -> np.ndarray:
    """Validate and return a real 3-vector of unit length."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {n.shape}")
    norm = np.linalg.norm(n)
    if abs(norm - 1.0) > ATOL:
        raise ValueError(f"vector is not unit length: |n| = {norm!r}")
    return n


def as_state(psi, dim: int = 2) -> np.ndarray:
    """Validate and return a normalized complex state vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (dim,):
        raise ValueError(f"expected a state of dimension {dim}, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > ATOL:
        raise ValueError(f"state is not normalized: |psi| = {norm!r}")
    return psi


def as_density(rho, dim: int = 2) -> np.ndarray:
    """Validate a density operator: hermitian, unit trace, positive.

    Eigenvalues are allowed to dip to -ATOL to absorb roundoff.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} operator, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > ATOL:
        raise ValueError("operator is not hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > ATOL:
        raise ValueError(f"operator does not have unit trace: tr = {tr!r}")
    if np.linalg.eigvalsh(rho).min() < -ATOL:
        raise ValueError("operator is not positive semidefinite")
    return rho


def pauli_dot(n) -> np.ndarray:
    """Spin component along the unit axis n: n_x sigma_x + n_y sigma_y + n_z sigma_z.

    Hermitian, traceless, with eigenvalues +1 and -1.
    """
    n = as_unit_vector(n)
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


def spin_eigenstates(n) -> tuple[np.ndarray, np.ndarray]:
    """Return the (+1, -1) eigenstates of the spin component along n.

    The global phases follow the package convention described in the
    module docstring; the pair is orthonormal.
    """
    n = as_unit_vector(n)
    theta = np.arccos(np.clip(n[2], -1.0, 1.0))
    phi = np.arctan2(n[1], n[0])
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    plus = np.array([c, np.exp(1j * phi) * s])
    minus = np.array([-np.exp(-1j * phi) * s, c])
    return plus, minus


def tensor(s1, s2) -> np.ndarray:
    """Product state of two qubits, first factor as the slow index."""
    s1 = as_state(s1)
    s2 = as_state(s2)
    return np.kron(s1, s2)


def partial_trace(rho, keep: int) -> np.ndarray:
    """Reduced state of one qubit of a two-qubit density operator.

    ``keep=1`` keeps the first qubit (traces out the second), ``keep=2``
    keeps the second.
    """
    rho = as_density(rho, dim=4)
    r = rho.reshape(2, 2, 2, 2)
    if keep == 1:
        return np.trace(r, axis1=1, axis2=3)
    if keep == 2:
        return np.trace(r, axis1=0, axis2=2)
    raise ValueError("keep must be 1 or 2")


def bloch_from_density(rho) -> np.ndarray:
    """Bloch vector (tr(rho sigma_x), tr(rho sigma_y), tr(rho sigma_z))."""
    rho = as_density(rho, dim=2)
    return np.real(np.einsum("kij,ji->k", PAULI, rho))


def density_from_bloch(c) -> np.ndarray:
    """Density operator (1 + c.sigma)/2 for a Bloch vector with |c| <= 1."""
    c = np.asarray(c, dtype=float)
    if c.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {c.shape}")
    if np.linalg.norm(c) > 1.0 + ATOL:
        raise ValueError("Bloch vector lies outside the unit ball")
    return 0.5 * (IDENTITY_2 + c[0] * SIGMA_X + c[1] * SIGMA_Y + c[2] * SIGMA_Z)
