"""Entropy functionals of the joint measurement and their lower bounds.

Two uncertainty measures are bounded: the joint outcome entropy
H(A_J, B_J) and the marginal entropy sum H(A_J) + H(B_J), both in bits.
Every bound here is state independent; the numeric minima they are checked
against come from :mod:`jmentropy.optimizer`.

Branch conventions: several bounds switch form at eta = pi/2.  At exactly
pi/2 both branches are evaluated, must agree to 1e-9, and their mean is
returned, so sweeps over floating-point eta see no discontinuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BlochState, UnitVector3, angle_between, binary_entropy
from .errors import (
    DomainError,
    JmentropyError,
    OutOfValidityRangeError,
    OverlapSingularityError,
    SharpnessViolationError,
)
from .measurement import (
    JointScheme,
    build_scheme,
    canonical_axes,
    equal_sharpness,
    marginal_distributions,
    max_beta,
)

DOMINANCE_TOL = 1e-9
BRANCH_TOL = 1e-9

#: Fixed validity-range constant of the separate-measurement bound.  The
#: sharpness-1 curvature root reproduces it numerically (see optimizer),
#: but the bound always uses this fixed value.
GMR_CRITICAL_ANGLE = 1.17056


def joint_entropy(scheme: JointScheme, state: BlochState) -> float:
    """H(A_J, B_J) via its decomposition H2(p) + p H(M) + (1-p) H(L).

    Independent of the direct Shannon-entropy-of-four-cells code path,
    which it must match to 1e-12 (tested).
    """
    p = scheme.p
    h_m = binary_entropy(0.5 * (1.0 + scheme.m.dot(state)))
    h_l = binary_entropy(0.5 * (1.0 + scheme.l.dot(state)))
    return binary_entropy(p) + p * h_m + (1.0 - p) * h_l


def marginal_entropy_sum(scheme: JointScheme, state: BlochState) -> float:
    """H(A_J) + H(B_J): sum of the two unsharp marginal entropies."""
    pa, pb = marginal_distributions(scheme, state)
    return binary_entropy(pa[0]) + binary_entropy(pb[0])


def marginal_sum_at_angle(alpha: float, beta: float, eta: float, theta: float) -> float:
    """H(A_J) + H(B_J) for the planar pure state at angle theta from a.

    Formula-level helper: does not require (alpha, beta) to be a valid
    measurement pair, which makes it usable as a finite-difference oracle.
    """
    return (binary_entropy(0.5 + 0.5 * alpha * math.cos(theta))
            + binary_entropy(0.5 + 0.5 * beta * math.cos(eta - theta)))


def _branch(eta: float, low_branch: float, high_branch: float) -> float:
    """Select the eta <= pi/2 or eta >= pi/2 form; average exactly at pi/2."""
    half_pi = 0.5 * math.pi
    if eta < half_pi:
        return low_branch
    if eta > half_pi:
        return high_branch
    if abs(low_branch - high_branch) > BRANCH_TOL:
        raise JmentropyError(
            f"branch mismatch at eta=pi/2: {low_branch} vs {high_branch}"
        )
    return 0.5 * (low_branch + high_branch)


def joint_bound_equal_sharpness(alpha: float, a: UnitVector3, b: UnitVector3) -> float:
    """Tight lower bound on H(A_J, B_J) for equal sharpnesses.

    H2(alpha/2 |a+b|) + alpha/2 |a-b|   (eta <= pi/2)
    H2(alpha/2 |a+b|) + alpha/2 |a+b|   (eta >= pi/2)

    Requires the equal pair (alpha, alpha) to saturate the sharpness
    trade-off for these axes.  Saturated by an eigenstate of the m axis
    (eta <= pi/2) or the l axis (eta >= pi/2).
    """
    eta = angle_between(a, b)
    s_half = 0.5 * alpha * float(np.linalg.norm(a.arr + b.arr))
    d_half = 0.5 * alpha * float(np.linalg.norm(a.arr - b.arr))
    if abs(s_half + d_half - 1.0) > 1e-6:
        raise SharpnessViolationError(
            f"alpha={alpha} is not the optimal equal sharpness for eta={eta}"
        )
    h = binary_entropy(s_half)
    return _branch(eta, h + d_half, h + s_half)


def overlap_max(alpha: float, beta: float) -> float:
    """Maximum eigenvector overlap of the two measurement axes.

    (1/sqrt(2)) sqrt(1 + |alpha^2 - beta^2| / (2 - alpha^2 - beta^2)),
    valid for saturating pairs; singular as alpha^2 + beta^2 -> 2.
    """
    ssq = alpha * alpha + beta * beta
    if ssq >= 2.0 - 1e-12:
        raise OverlapSingularityError(
            f"alpha^2+beta^2={ssq} reaches the overlap formula's pole at 2"
        )
    val = math.sqrt(0.5 * (1.0 + abs(alpha * alpha - beta * beta) / (2.0 - ssq)))
    return min(val, 1.0)


def joint_bound_general(alpha: float, beta: float, a: UnitVector3, b: UnitVector3) -> float:
    """Lower bound on H(A_J, B_J) for any saturating sharpness pair.

    H2(|alpha a + beta b|/2) - |alpha a -+ beta b| log2(overlap_max),
    with the minus-combination norm for eta <= pi/2 and the plus one for
    eta >= pi/2.  Not tight when alpha != beta.
    """
    eta = angle_between(a, b)
    s = float(np.linalg.norm(alpha * a.arr + beta * b.arr))
    d = float(np.linalg.norm(alpha * a.arr - beta * b.arr))
    if abs(s + d - 2.0) > 1e-6:
        raise SharpnessViolationError(
            f"(alpha={alpha}, beta={beta}) does not saturate the trade-off "
            f"for eta={eta}"
        )
    log_ov = math.log2(overlap_max(alpha, beta))
    h = binary_entropy(0.5 * s)
    return _branch(eta, h - d * log_ov, h - s * log_ov)


def marginal_bound_equal_sharpness(alpha: float, eta: float,
                                   eta_prime: float | None = None) -> float:
    """Tight lower bound on H(A_J) + H(B_J) for equal sharpnesses.

    2 H2(1/2 + alpha/2 cos(eta/2)) on [0, eta'],
    2 H2(1/2 + alpha/2 sin(eta/2)) on [pi - eta', pi],
    where eta' is the critical angle from the curvature condition.  Between
    the two ranges the bisector state is no longer the minimizer and only
    the numeric minimum applies (OutOfValidityRangeError is raised).
    """
    if eta_prime is None:
        eta_prime = _cached_eta_prime()
    if eta <= eta_prime:
        return 2.0 * binary_entropy(0.5 + 0.5 * alpha * math.cos(0.5 * eta))
    if eta >= math.pi - eta_prime:
        return 2.0 * binary_entropy(0.5 + 0.5 * alpha * math.sin(0.5 * eta))
    raise OutOfValidityRangeError(
        f"eta={eta} lies in ({eta_prime}, {math.pi - eta_prime}); the "
        f"bisector bound does not apply there, use the numeric minimizer"
    )


def concavity_bound(alpha: float, beta: float) -> float:
    """State-independent bound H2(1/2 + alpha/2) + H2(1/2 + beta/2).

    Follows from writing each unsharp marginal as a coarse-graining of the
    sharp one and using concavity of the binary entropy.
    """
    if not (0.0 <= alpha <= 1.0 and 0.0 <= beta <= 1.0):
        raise DomainError(f"sharpnesses ({alpha}, {beta}) outside [0, 1]")
    return (binary_entropy(0.5 + 0.5 * alpha)
            + binary_entropy(0.5 + 0.5 * beta))


def kp_overlap_norms(alpha: float, beta: float, eta: float) -> tuple[float, float]:
    """Operator norms |sqrt(E^a_+) sqrt(E^b_+)| and |sqrt(E^a_+) sqrt(E^b_-)|.

    Closed forms for the marginal effects; the remaining sign combinations
    coincide with these two by symmetry.  Cross-checked in the tests
    against an explicit 2x2 eigen-decomposition oracle.
    """
    ab = alpha * beta
    ce = math.cos(eta)
    se2 = math.sin(eta) ** 2
    rad_p = alpha * alpha + beta * beta + 2.0 * ab * ce - ab * ab * se2
    rad_m = alpha * alpha + beta * beta - 2.0 * ab * ce - ab * ab * se2
    n_pp = 0.5 * math.sqrt(1.0 + ab * ce + math.sqrt(max(rad_p, 0.0)))
    n_pm = 0.5 * math.sqrt(1.0 - ab * ce + math.sqrt(max(rad_m, 0.0)))
    return n_pp, n_pm


def kp_bound(alpha: float, beta: float, eta: float) -> float:
    """Operator-overlap lower bound on H(A_J) + H(B_J).

    -2 log2 of the larger of the two distinct effect-overlap norms; the
    (+,+) norm dominates for eta <= pi/2 and the (+,-) norm for
    eta >= pi/2, and both coincide at pi/2.  Branches are evaluated
    lazily: the inactive norm vanishes at eta in {0, pi} for sharp pairs.
    """
    n_pp, n_pm = kp_overlap_norms(alpha, beta, eta)
    half_pi = 0.5 * math.pi
    if eta < half_pi:
        return -2.0 * math.log2(n_pp)
    if eta > half_pi:
        return -2.0 * math.log2(n_pm)
    return _branch(eta, -2.0 * math.log2(n_pp), -2.0 * math.log2(n_pm))


def gmr_separate_bound(eta: float) -> float:
    """Benchmark bound on H(A) + H(B) for separate sharp measurements.

    2 H2(1/2 + cos(eta/2)/2) on [0, 1.17056] and
    2 H2(1/2 + sin(eta/2)/2) on [pi - 1.17056, pi]; outside those ranges
    the separate-measurement minimum is only available numerically.
    """
    if eta <= GMR_CRITICAL_ANGLE:
        return 2.0 * binary_entropy(0.5 + 0.5 * math.cos(0.5 * eta))
    if eta >= math.pi - GMR_CRITICAL_ANGLE:
        return 2.0 * binary_entropy(0.5 + 0.5 * math.sin(0.5 * eta))
    raise OutOfValidityRangeError(
        f"eta={eta} outside the separate-measurement bound's validity "
        f"ranges [0, {GMR_CRITICAL_ANGLE}] and "
        f"[{math.pi - GMR_CRITICAL_ANGLE}, pi]"
    )


def maassen_uffink_bound(max_overlap: float) -> float:
    """-2 log2 of the maximum eigenvector overlap (bits)."""
    if not 0.0 < max_overlap <= 1.0 + 1e-12:
        raise DomainError(f"max_overlap={max_overlap} outside (0, 1]")
    return -2.0 * math.log2(min(max_overlap, 1.0))


_ETA_PRIME_CACHE: float | None = None


def _cached_eta_prime() -> float:
    global _ETA_PRIME_CACHE
    if _ETA_PRIME_CACHE is None:
        from . import optimizer

        _ETA_PRIME_CACHE = optimizer.find_eta_prime()
    return _ETA_PRIME_CACHE


@dataclass(frozen=True, slots=True)
class BoundReport:
    """All bounds and numeric minima for one parameter point.

    Inapplicable bounds (outside a validity range, or at a formula pole)
    are None.  Auxiliary minima: ``numeric_min_separate`` is the minimum
    entropy sum for separate sharp measurements along a and b (the
    no-joint-measurement benchmark), ``numeric_min_axes_sharp`` the same
    for the scheme axes m and l (the quantity the overlap bound applies
    to).
    """

    eta: float
    alpha: float
    beta: float
    p: float
    joint_bound_equal: float | None
    joint_bound_general: float | None
    marginal_bound_equal: float | None
    concavity_bound: float
    kp_bound: float
    gmr_bound: float | None
    mu_bound: float | None
    numeric_min_joint: float | None = None
    numeric_min_marginal_sum: float | None = None
    numeric_min_separate: float | None = None
    numeric_min_axes_sharp: float | None = None
    min_thetas_joint: tuple[float, ...] | None = None
    min_thetas_marginal: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        mj, mm = self.numeric_min_joint, self.numeric_min_marginal_sum
        checks: list[tuple[str, float | None, float | None]] = [
            ("joint_bound_equal <= min joint", self.joint_bound_equal, mj),
            ("joint_bound_general <= min joint", self.joint_bound_general, mj),
            ("min joint <= min marginal sum (subadditivity)", mj, mm),
            ("marginal_bound_equal <= min marginal sum", self.marginal_bound_equal, mm),
            ("concavity_bound <= min marginal sum", self.concavity_bound, mm),
            ("kp_bound <= min marginal sum", self.kp_bound, mm),
            ("gmr_bound <= min separate", self.gmr_bound, self.numeric_min_separate),
            ("mu_bound <= min sharp-axes sum", self.mu_bound, self.numeric_min_axes_sharp),
        ]
        for label, bound, minimum in checks:
            if bound is not None and minimum is not None:
                if bound > minimum + DOMINANCE_TOL:
                    raise JmentropyError(
                        f"dominance violated at eta={self.eta}, "
                        f"alpha={self.alpha}, beta={self.beta}: {label} "
                        f"fails ({bound} > {minimum})"
                    )


def build_report(eta: float, alpha: float | None = None, beta: float | None = None,
                 *, with_minima: bool = True, grid_n: int = 2048,
                 refine_tol: float = 1e-12,
                 eta_prime: float | None = None) -> BoundReport:
    """Evaluate every applicable bound (and optionally the numeric minima)
    at one parameter point, in the canonical frame.

    alpha defaults to the optimal equal sharpness for eta; beta defaults to
    max_beta(alpha, eta).
    """
    a, b = canonical_axes(eta)
    if alpha is None:
        alpha = equal_sharpness(eta)
    if beta is None:
        beta = max_beta(alpha, eta)
    scheme = build_scheme(a, b, alpha, beta, degenerate="orthogonal")
    is_equal = abs(alpha - beta) <= 1e-12

    jb_equal = joint_bound_equal_sharpness(alpha, a, b) if is_equal else None
    try:
        jb_general = joint_bound_general(alpha, beta, a, b)
    except OverlapSingularityError:
        jb_general = None
    mb_equal = None
    if is_equal:
        try:
            mb_equal = marginal_bound_equal_sharpness(alpha, eta, eta_prime)
        except OutOfValidityRangeError:
            mb_equal = None
    try:
        gmr = gmr_separate_bound(eta)
    except OutOfValidityRangeError:
        gmr = None
    try:
        mu = maassen_uffink_bound(overlap_max(alpha, beta))
    except OverlapSingularityError:
        mu = None

    minima: dict[str, object] = {}
    if with_minima:
        from . import optimizer

        res_j = optimizer.minimize_planar(joint_entropy, scheme,
                                          grid_n=grid_n, refine_tol=refine_tol)
        res_m = optimizer.minimize_planar(marginal_entropy_sum, scheme,
                                          grid_n=grid_n, refine_tol=refine_tol)
        res_sep = optimizer.minimize_sharp_pair_sum(scheme.a, scheme.b,
                                                    grid_n=grid_n,
                                                    refine_tol=refine_tol)
        res_axes = optimizer.minimize_sharp_pair_sum(scheme.m, scheme.l,
                                                     grid_n=grid_n,
                                                     refine_tol=refine_tol)
        minima = {
            "numeric_min_joint": res_j.value,
            "numeric_min_marginal_sum": res_m.value,
            "numeric_min_separate": res_sep.value,
            "numeric_min_axes_sharp": res_axes.value,
            "min_thetas_joint": res_j.all_minima,
            "min_thetas_marginal": res_m.all_minima,
        }

    return BoundReport(
        eta=eta,
        alpha=alpha,
        beta=beta,
        p=scheme.p,
        joint_bound_equal=jb_equal,
        joint_bound_general=jb_general,
        marginal_bound_equal=mb_equal,
        concavity_bound=concavity_bound(alpha, beta),
        kp_bound=kp_bound(alpha, beta, eta),
        gmr_bound=gmr,
        mu_bound=mu,
        **minima,  # type: ignore[arg-type]
    )
