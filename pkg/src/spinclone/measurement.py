"""Optimal joint measurement of two qubit spin components.

A joint measurement along two unit axes ``a`` and ``b`` with sharpnesses
``alpha`` and ``beta`` is admissible only when

    |alpha a + beta b| + |alpha a - beta b| <= 2,

and is optimal when the bound is met with equality.  A saturating
measurement can be realized by measuring along one of two intermediate
axes, chosen at random:

    m = (alpha a + beta b) / (2 p),      p   = |alpha a + beta b| / 2,
    l = (alpha a - beta b) / (2 (1-p)),  1-p = |alpha a - beta b| / 2.

Outcome labels follow the convention that spin up along ``m`` counts as
up-up, down along ``m`` as down-down, up along ``l`` as up along ``a``
and down along ``b``, and down along ``l`` as the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ATOL, IDENTITY_2, as_density, as_unit_vector, pauli_dot

#: Outcome labels, ordered (a-outcome, b-outcome).
OUTCOME_LABELS = ("++", "+-", "-+", "--")

#: Inputs must saturate the admissibility bound to within this tolerance.
SATURATION_TOL = 1e-9

#: Below this weight the corresponding intermediate axis is treated as
#: unused and aliased to the other one.
DEGENERATE_TOL = 1e-12


class NonSaturating(ValueError):
    """Raised when (alpha, beta, axes) do not saturate the admissibility bound."""

    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(
            "sharpness pair does not saturate the joint-measurement bound: "
            f"|alpha a + beta b| + |alpha a - beta b| - 2 = {residual:.3e}"
        )


class DegenerateAxis(ValueError):
    """Raised when an intermediate axis is undefined and no convention applies.

    With the aliasing convention used by :func:`build_geometry` (the axis
    with zero weight is set equal to the other one) every saturating input
    is covered, so this is not raised in normal use; it is kept as part of
    the public error contract.
    """


@dataclass(frozen=True)
class MeasurementGeometry:
    """Full parameter set of an optimal joint measurement.

    Attributes
    ----------
    a, b : unit 3-vectors, the measured spin axes.
    alpha, beta : sharpness of the a- and b-outcomes, in [0, 1].
    eta : angle between a and b, radians.
    m, l : derived unit axes actually measured along.
    p : probability of measuring along m (1-p for l).
    epsilon : half the angle between m and l, in [0, pi/2].
    """

    a: np.ndarray
    b: np.ndarray
    alpha: float
    beta: float
    eta: float
    m: np.ndarray
    l: np.ndarray
    p: float
    epsilon: float


@dataclass(frozen=True)
class Povm4:
    """Four-outcome probability operator measure, elements keyed by outcome."""

    pp: np.ndarray
    pm: np.ndarray
    mp: np.ndarray
    mm: np.ndarray

    @property
    def elements(self) -> tuple[np.ndarray, ...]:
        return (self.pp, self.pm, self.mp, self.mm)


@dataclass(frozen=True)
class JointDistribution:
    """Probabilities of the four joint outcomes, in label order."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p_pp, self.p_pm, self.p_mp, self.p_mm])


def optimality_lhs(alpha: float, beta: float, eta: float) -> float:
    """Left-hand side of the admissibility bound, |aa+bb| + |aa-bb|.

    Equals 2 exactly for optimal joint measurements and is smaller for
    strictly sub-optimal sharpness pairs.
    """
    ab = 2.0 * alpha * beta * np.cos(eta)
    ss = alpha * alpha + beta * beta
    return float(np.sqrt(max(ss + ab, 0.0)) + np.sqrt(max(ss - ab, 0.0)))


def beta_max(alpha: float, eta: float) -> float:
    """Largest b-sharpness compatible with a given alpha and axis angle.

    The saturating value is beta^2 = (1 - alpha^2) / (1 - alpha^2 cos^2 eta).
    The expression degenerates to 0/0 only when alpha = 1 and the axes are
    (anti)parallel; there both components can be sharp, so 1 is returned.
    """
    if not 0.0 <= alpha <= 1.0 + ATOL:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    alpha = min(alpha, 1.0)
    denom = 1.0 - (alpha * np.cos(eta)) ** 2
    if denom < 1e-15:
        return 1.0
    return float(np.sqrt((1.0 - alpha * alpha) / denom))


def build_geometry(a, b, alpha: float, beta: float) -> MeasurementGeometry:
    """Derive the measurement axes m, l and weights for a saturating input.

    Raises
    ------
    NonSaturating
        If the input violates the bound by more than ``SATURATION_TOL``.
        Off-frontier inputs are rejected rather than projected, since
        silently altering the sharpness pair would corrupt downstream
        fidelity comparisons.
    """
    a = as_unit_vector(a)
    b = as_unit_vector(b)
    for name, val in (("alpha", alpha), ("beta", beta)):
        if not -ATOL <= val <= 1.0 + ATOL:
            raise ValueError(f"{name} must lie in [0, 1], got {val!r}")
    eta = float(np.arccos(np.clip(a @ b, -1.0, 1.0)))
    vec_sum = alpha * a + beta * b
    vec_diff = alpha * a - beta * b
    p = 0.5 * float(np.linalg.norm(vec_sum))
    q = 0.5 * float(np.linalg.norm(vec_diff))
    residual = 2.0 * (p + q) - 2.0
    if abs(residual) > SATURATION_TOL:
        raise NonSaturating(residual)
    # When one weight vanishes its axis is undefined; alias it to the other
    # axis, whose operator weight is zero, so the physics is unaffected.
    if 1.0 - p < DEGENERATE_TOL:
        m = vec_sum / (2.0 * p)
        l = m.copy()
    elif p < DEGENERATE_TOL:
        l = vec_diff / (2.0 * q)
        m = l.copy()
    else:
        m = vec_sum / (2.0 * p)
        l = vec_diff / (2.0 * q)
    epsilon = 0.5 * float(np.arccos(np.clip(m @ l, -1.0, 1.0)))
    for arr in (a, b, m, l):
        arr.setflags(write=False)
    return MeasurementGeometry(
        a=a, b=b, alpha=float(alpha), beta=float(beta), eta=eta,
        m=m, l=l, p=p, epsilon=epsilon,
    )


def geometry_from_angles(alpha: float, beta: float, eta: float) -> MeasurementGeometry:
    """Geometry in the canonical frame: a along z, b in the x-z plane."""
    a = np.array([0.0, 0.0, 1.0])
    b = np.array([np.sin(eta), 0.0, np.cos(eta)])
    return build_geometry(a, b, alpha, beta)


def build_povm(g: MeasurementGeometry) -> Povm4:
    """Measurement operators of the optimal joint measurement.

    The up-up/down-down pair carries weight p on the m axis, the mixed
    pair weight 1-p on the l axis.  The four elements are positive and
    sum to the identity.
    """
    sm = pauli_dot(g.m)
    sl = pauli_dot(g.l)
    return Povm4(
        pp=g.p / 2 * (IDENTITY_2 + sm),
        pm=(1 - g.p) / 2 * (IDENTITY_2 + sl),
        mp=(1 - g.p) / 2 * (IDENTITY_2 - sl),
        mm=g.p / 2 * (IDENTITY_2 - sm),
    )


def marginal_operators(povm: Povm4):
    """Marginal two-outcome measurements for the a and b components.

    Returns ((A+, A-), (B+, B-)) where the a-marginal sums outcomes with
    the same first label and the b-marginal outcomes with the same second
    label.  Each pair sums to the identity and is unbiased: the
    expectation difference equals alpha (resp. beta) times the sharp
    expectation value, for every state.
    """
    a_plus = povm.pp + povm.pm
    a_minus = povm.mp + povm.mm
    b_plus = povm.pp + povm.mp
    b_minus = povm.pm + povm.mm
    return (a_plus, a_minus), (b_plus, b_minus)


def joint_distribution(rho, povm: Povm4) -> JointDistribution:
    """Born-rule outcome probabilities tr(rho Pi) for each POVM element."""
    rho = as_density(rho, dim=2)
    probs = [float(np.trace(rho @ e).real) for e in povm.elements]
    return JointDistribution(*probs)


def sample_outcomes(rho, g: MeasurementGeometry, n: int, seed: int = 0) -> dict[str, int]:
    """Draw n independent outcomes of the joint measurement on rho.

    Sampling uses numpy's PCG64 generator seeded with ``seed``; identical
    inputs and seed give identical counts.  Returns counts keyed by
    outcome label.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    dist = joint_distribution(rho, build_povm(g))
    probs = np.clip(dist.as_array(), 0.0, 1.0)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(n, probs)
    return dict(zip(OUTCOME_LABELS, (int(c) for c in counts)))
