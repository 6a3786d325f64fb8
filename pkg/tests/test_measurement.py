import numpy as np
import pytest

from spinclone import (
    OUTCOME_LABELS,
    NonSaturating,
    beta_max,
    build_geometry,
    build_povm,
    geometry_from_angles,
    joint_distribution,
    marginal_operators,
    optimality_lhs,
    pauli_dot,
    sample_outcomes,
    spin_eigenstates,
)

from conftest import random_geometry, random_pure_state

A_HAT = np.array([0.0, 0.0, 1.0])
B_HAT = np.array([1.0, 0.0, 0.0])


def bisect_beta_max(alpha, eta, iterations=200):
    """Independent oracle: largest beta keeping the admissibility bound."""
    if optimality_lhs(alpha, 1.0, eta) <= 2.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if optimality_lhs(alpha, mid, eta) <= 2.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_beta_max_commuting_axes():
    assert beta_max(1.0, 0.0) == 1.0
    assert beta_max(0.3, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_beta_max_orthogonal_sharp():
    assert beta_max(1.0, np.pi / 2) == pytest.approx(0.0, abs=1e-12)


def test_beta_max_orthogonal_derived():
    oracle = bisect_beta_max(0.6, np.pi / 2)
    assert oracle == pytest.approx(0.8, abs=1e-9)
    assert beta_max(0.6, np.pi / 2) == pytest.approx(oracle, abs=1e-9)


def test_beta_max_matches_bisection_oracle(rng):
    for _ in range(300):
        alpha = rng.uniform(0.0, 1.0)
        eta = rng.uniform(0.0, np.pi)
        closed = beta_max(alpha, eta)
        assert closed == pytest.approx(bisect_beta_max(alpha, eta), abs=1e-9)
        assert abs(optimality_lhs(alpha, closed, eta) - 2.0) < 1e-9


def test_build_geometry_equal_sharpness_half_angle():
    g = build_geometry(A_HAT, B_HAT, 1 / np.sqrt(2), 1 / np.sqrt(2))
    assert g.epsilon == pytest.approx(np.pi / 4, abs=1e-12)


def test_build_geometry_derived_values():
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    assert g.p == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(g.m, [0.8, 0.0, 0.6], atol=1e-12)
    assert np.allclose(g.l, [-0.8, 0.0, 0.6], atol=1e-12)
    assert g.eta == pytest.approx(np.pi / 2, abs=1e-12)


def test_build_geometry_beta_zero_collapses_axes():
    g = build_geometry(A_HAT, B_HAT, 1.0, 0.0)
    assert g.p == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(g.m, A_HAT, atol=1e-12)
    assert np.allclose(g.l, A_HAT, atol=1e-12)
    assert g.epsilon == pytest.approx(0.0, abs=1e-12)


def test_build_geometry_rejects_non_saturating():
    with pytest.raises(NonSaturating) as excinfo:
        build_geometry(A_HAT, B_HAT, 0.9, 0.9)
    assert excinfo.value.residual == pytest.approx(1.8 * np.sqrt(2) - 2.0, abs=1e-12)


def test_build_geometry_invariants(rng):
    for _ in range(1000):
        g = random_geometry(rng)
        assert np.cos(g.eta) == pytest.approx(g.a @ g.b, abs=1e-12)
        assert g.p == pytest.approx(0.5 * np.linalg.norm(g.alpha * g.a + g.beta * g.b), abs=1e-12)
        assert 1 - g.p == pytest.approx(
            0.5 * np.linalg.norm(g.alpha * g.a - g.beta * g.b), abs=1e-12
        )
        assert np.linalg.norm(g.m) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(g.l) == pytest.approx(1.0, abs=1e-12)
        assert abs(optimality_lhs(g.alpha, g.beta, g.eta) - 2.0) < 1e-9
        weight = 4 * g.p * (1 - g.p)
        if weight > 1e-6:
            assert np.cos(2 * g.epsilon) == pytest.approx(
                (g.alpha**2 - g.beta**2) / weight, abs=1e-10
            )
            assert np.cos(2 * g.epsilon) == pytest.approx(g.m @ g.l, abs=1e-12)


def test_build_povm_projective_limit():
    g = build_geometry(A_HAT, A_HAT, 1.0, 1.0)
    povm = build_povm(g)
    plus, minus = spin_eigenstates(g.a)
    assert np.allclose(povm.pm, 0.0, atol=1e-15)
    assert np.allclose(povm.mp, 0.0, atol=1e-15)
    assert np.allclose(povm.pp, np.outer(plus, plus.conj()), atol=1e-12)
    assert np.allclose(povm.mm, np.outer(minus, minus.conj()), atol=1e-12)


def test_build_povm_traces():
    povm = build_povm(build_geometry(A_HAT, B_HAT, 0.6, 0.8))
    for element in povm.elements:
        assert np.trace(element).real == pytest.approx(0.5, abs=1e-12)


def test_build_povm_complete_and_positive(rng):
    for _ in range(300):
        povm = build_povm(random_geometry(rng))
        assert np.max(np.abs(sum(povm.elements) - np.eye(2))) < 1e-12
        for element in povm.elements:
            assert np.linalg.eigvalsh(element).min() > -1e-12


def test_povm_rank_one_form(rng):
    for _ in range(300):
        g = random_geometry(rng)
        povm = build_povm(g)
        m_plus, m_minus = spin_eigenstates(g.m)
        l_plus, l_minus = spin_eigenstates(g.l)
        assert np.max(np.abs(povm.pp - g.p * np.outer(m_plus, m_plus.conj()))) < 1e-12
        assert np.max(np.abs(povm.mm - g.p * np.outer(m_minus, m_minus.conj()))) < 1e-12
        assert np.max(np.abs(povm.pm - (1 - g.p) * np.outer(l_plus, l_plus.conj()))) < 1e-12
        assert np.max(np.abs(povm.mp - (1 - g.p) * np.outer(l_minus, l_minus.conj()))) < 1e-12


def test_marginals_projective_limit():
    g = build_geometry(A_HAT, A_HAT, 1.0, 1.0)
    (a_plus, a_minus), _ = marginal_operators(build_povm(g))
    plus, minus = spin_eigenstates(g.a)
    assert np.allclose(a_plus, np.outer(plus, plus.conj()), atol=1e-12)
    assert np.allclose(a_minus, np.outer(minus, minus.conj()), atol=1e-12)


def test_marginals_derived_form():
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    (a_plus, a_minus), (b_plus, b_minus) = marginal_operators(build_povm(g))
    assert np.allclose(a_plus, 0.5 * (np.eye(2) + 0.6 * pauli_dot(A_HAT)), atol=1e-12)
    assert np.allclose(a_minus, 0.5 * (np.eye(2) - 0.6 * pauli_dot(A_HAT)), atol=1e-12)
    assert np.allclose(b_plus, 0.5 * (np.eye(2) + 0.8 * pauli_dot(B_HAT)), atol=1e-12)


def test_marginals_unbiased(rng):
    for _ in range(200):
        g = random_geometry(rng)
        (a_plus, a_minus), (b_plus, b_minus) = marginal_operators(build_povm(g))
        for _ in range(5):
            psi = random_pure_state(rng)
            rho = np.outer(psi, psi.conj())
            got_a = np.trace(rho @ (a_plus - a_minus)).real
            want_a = g.alpha * np.trace(rho @ pauli_dot(g.a)).real
            got_b = np.trace(rho @ (b_plus - b_minus)).real
            want_b = g.beta * np.trace(rho @ pauli_dot(g.b)).real
            assert abs(got_a - want_a) < 1e-10
            assert abs(got_b - want_b) < 1e-10


def test_joint_distribution_maximally_mixed():
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    dist = joint_distribution(np.eye(2) / 2, build_povm(g))
    expected = [g.p / 2, (1 - g.p) / 2, (1 - g.p) / 2, g.p / 2]
    assert np.allclose(dist.as_array(), expected, atol=1e-12)


def test_joint_distribution_projective_limit():
    g = build_geometry(A_HAT, A_HAT, 1.0, 1.0)
    plus = spin_eigenstates(g.m)[0]
    dist = joint_distribution(np.outer(plus, plus.conj()), build_povm(g))
    assert np.allclose(dist.as_array(), [1, 0, 0, 0], atol=1e-12)


def test_joint_distribution_derived():
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    psi = spin_eigenstates(g.a)[0]
    dist = joint_distribution(np.outer(psi, psi.conj()), build_povm(g))
    assert np.allclose(dist.as_array(), [0.4, 0.4, 0.1, 0.1], atol=1e-12)
    # a-marginal of the same distribution: (1 +- alpha)/2
    assert dist.p_pp + dist.p_pm == pytest.approx(0.8, abs=1e-12)
    assert dist.p_mp + dist.p_mm == pytest.approx(0.2, abs=1e-12)
    assert sum(dist.as_array()) == pytest.approx(1.0, abs=1e-12)


def test_sample_outcomes_deterministic():
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    first = sample_outcomes(np.eye(2) / 2, g, 10000, seed=42)
    second = sample_outcomes(np.eye(2) / 2, g, 10000, seed=42)
    assert first == second


def test_sample_outcomes_single_draw():
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    counts = sample_outcomes(np.eye(2) / 2, g, 1, seed=7)
    assert sum(counts.values()) == 1
    assert set(counts) == set(OUTCOME_LABELS)


def _assert_within_5_sigma(counts, probs, n):
    for label, prob in zip(OUTCOME_LABELS, probs):
        sigma = np.sqrt(prob * (1 - prob) / n)
        assert abs(counts[label] / n - prob) <= 5 * sigma + 1e-12


def test_sample_outcomes_mixed_state_frequencies():
    n = 10**6
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    counts = sample_outcomes(np.eye(2) / 2, g, n, seed=0)
    _assert_within_5_sigma(counts, [0.25, 0.25, 0.25, 0.25], n)


def test_sample_outcomes_derived_frequencies():
    n = 10**6
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    psi = spin_eigenstates(g.a)[0]
    counts = sample_outcomes(np.outer(psi, psi.conj()), g, n, seed=0)
    _assert_within_5_sigma(counts, [0.4, 0.4, 0.1, 0.1], n)


def test_sample_outcomes_chi_square():
    from scipy import stats

    n = 10**6
    g = build_geometry(A_HAT, B_HAT, 0.6, 0.8)
    psi = spin_eigenstates(g.a)[0]
    counts = sample_outcomes(np.outer(psi, psi.conj()), g, n, seed=123)
    observed = np.array([counts[k] for k in OUTCOME_LABELS])
    expected = n * joint_distribution(np.outer(psi, psi.conj()), build_povm(g)).as_array()
    _, p_value = stats.chisquare(observed, expected)
    assert p_value > 0.001


def test_optimality_lhs_sharp_single_axis():
    assert optimality_lhs(1.0, 0.0, 1.234) == pytest.approx(2.0, abs=1e-15)


def test_optimality_lhs_universal_sharpness():
    value = optimality_lhs(2 / 3, 2 / 3, np.pi / 2)
    assert value == pytest.approx(4 * np.sqrt(2) / 3, abs=1e-12)
    assert value < 2.0


def test_optimality_lhs_saturating_pair():
    assert optimality_lhs(0.6, 0.8, np.pi / 2) == pytest.approx(2.0, abs=1e-12)


def test_geometry_from_angles_matches_explicit_axes():
    g1 = geometry_from_angles(0.6, 0.8, np.pi / 2)
    g2 = build_geometry(A_HAT, [1.0, 0.0, 0.0], 0.6, 0.8)
    assert np.allclose(g1.m, g2.m, atol=1e-12)
    assert g1.p == pytest.approx(g2.p, abs=1e-15)
