"""Optimal joint measurement of two spin components of a qubit.

The measurement targets the spin observables along unit vectors ``a`` and
``b`` with sharpnesses ``alpha`` and ``beta``.  Valid sharpness pairs obey
the trade-off

    |alpha*a + beta*b| + |alpha*a - beta*b| <= 2,

and pairs saturating it are optimal: neither sharpness can be raised
without lowering the other.  The scheme realizing an optimal pair measures
spin along an axis ``m`` with probability ``p``, or along an axis ``l``
with probability ``1 - p``:

    m = (alpha*a + beta*b) / (2p),      p = |alpha*a + beta*b| / 2,
    l = (alpha*a - beta*b) / (2(1-p)),

with the outcome along m read as both spins up (+,+) or both down (-,-),
and the outcome along l read as (+,-) or (-,+).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BlochState, ProbVector, UnitVector3, angle_between
from .errors import (
    DegenerateSchemeError,
    DomainError,
    InvalidDistributionError,
    SharpnessViolationError,
)

SATURATION_TOL = 1e-9
POSITIVITY_TOL = 1e-12
_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class SharpnessPair:
    """Sharpnesses of the two jointly measured observables, each in [0, 1]."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if v < -POSITIVITY_TOL or v > 1.0 + POSITIVITY_TOL:
                raise DomainError(f"{name}={v} outside [0, 1]")
        object.__setattr__(self, "alpha", min(max(float(self.alpha), 0.0), 1.0))
        object.__setattr__(self, "beta", min(max(float(self.beta), 0.0), 1.0))


@dataclass(frozen=True, slots=True)
class JointScheme:
    """A fully specified two-axis joint measurement."""

    a: UnitVector3
    b: UnitVector3
    sharpness: SharpnessPair
    m: UnitVector3
    l: UnitVector3
    p: float

    def __post_init__(self) -> None:
        al, be = self.sharpness.alpha, self.sharpness.beta
        v_plus = al * self.a.arr + be * self.b.arr
        v_minus = al * self.a.arr - be * self.b.arr
        if abs(self.p - 0.5 * float(np.linalg.norm(v_plus))) > POSITIVITY_TOL:
            raise SharpnessViolationError(
                f"p={self.p} inconsistent with |alpha*a + beta*b|/2"
            )
        # axis reconstruction only constrains axes that carry weight
        if self.p > _DEGENERATE_TOL:
            if np.linalg.norm(v_plus / (2.0 * self.p) - self.m.arr) > SATURATION_TOL:
                raise SharpnessViolationError("m axis does not reconstruct")
        if 1.0 - self.p > _DEGENERATE_TOL:
            if np.linalg.norm(v_minus / (2.0 * (1.0 - self.p)) - self.l.arr) > SATURATION_TOL:
                raise SharpnessViolationError("l axis does not reconstruct")
        if abs(al - be) <= POSITIVITY_TOL and _DEGENERATE_TOL < self.p < 1.0 - _DEGENERATE_TOL:
            if abs(self.m.dot(self.l)) > SATURATION_TOL:
                raise SharpnessViolationError(
                    "equal sharpness requires orthogonal measurement axes"
                )

    @property
    def alpha(self) -> float:
        return self.sharpness.alpha

    @property
    def beta(self) -> float:
        return self.sharpness.beta

    @property
    def eta(self) -> float:
        return angle_between(self.a, self.b)

    @property
    def is_degenerate(self) -> bool:
        """True when one axis carries zero probability weight."""
        return self.p <= _DEGENERATE_TOL or self.p >= 1.0 - _DEGENERATE_TOL


@dataclass(frozen=True, slots=True)
class JointDistribution:
    """The four joint outcome probabilities, ordered (++, +-, -+, --)."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self) -> None:
        for name in ("p_pp", "p_pm", "p_mp", "p_mm"):
            v = getattr(self, name)
            if v < -POSITIVITY_TOL:
                raise InvalidDistributionError(f"{name}={v} is negative")
            object.__setattr__(self, name, max(float(v), 0.0))
        total = math.fsum(self.as_tuple())
        if abs(total - 1.0) > POSITIVITY_TOL:
            raise InvalidDistributionError(f"joint probabilities sum to {total}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)

    def as_prob_vector(self) -> ProbVector:
        return ProbVector(self.as_tuple())

    def marginal_a(self) -> ProbVector:
        return ProbVector((self.p_pp + self.p_pm, self.p_mp + self.p_mm))

    def marginal_b(self) -> ProbVector:
        return ProbVector((self.p_pp + self.p_mp, self.p_pm + self.p_mm))


@dataclass(frozen=True, slots=True)
class PomElement:
    """A qubit effect t*1 + v.sigma with 0 <= t - |v| (positivity)."""

    weight: float
    vector: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vector, dtype=float).reshape(3)
        if self.weight < float(np.linalg.norm(v)) - POSITIVITY_TOL:
            raise DomainError(
                f"effect with t={self.weight}, |v|={np.linalg.norm(v)} is not positive"
            )
        v.flags.writeable = False
        object.__setattr__(self, "vector", v)
        object.__setattr__(self, "weight", float(self.weight))

    def expectation(self, state: BlochState) -> float:
        """Outcome probability tr(E rho) = t + v.c for the given state."""
        return self.weight + float(self.vector @ state.c)

    def matrix(self) -> np.ndarray:
        """The 2x2 operator in the standard basis (test/diagnostic use)."""
        t, (vx, vy, vz) = self.weight, self.vector
        return np.array(
            [[t + vz, vx - 1j * vy], [vx + 1j * vy, t - vz]], dtype=complex
        )


def canonical_axes(eta: float) -> tuple[UnitVector3, UnitVector3]:
    """The fixed reference frame a = z, b tilted by eta in the x-z plane."""
    if not 0.0 <= eta <= math.pi:
        raise DomainError(f"eta={eta} outside [0, pi]")
    return UnitVector3(0.0, 0.0, 1.0), UnitVector3(math.sin(eta), 0.0, math.cos(eta))


def saturation_gap(alpha: float, beta: float, eta: float) -> float:
    """|alpha*a + beta*b| + |alpha*a - beta*b| - 2 for axes at angle eta."""
    ce = math.cos(eta)
    s = math.sqrt(max(alpha * alpha + beta * beta + 2.0 * alpha * beta * ce, 0.0))
    d = math.sqrt(max(alpha * alpha + beta * beta - 2.0 * alpha * beta * ce, 0.0))
    return s + d - 2.0


def max_beta(alpha: float, eta: float) -> float:
    """Largest beta compatible with the sharpness trade-off, given alpha.

    Closed form: beta^2 = (1 - alpha^2) / (1 - alpha^2 cos^2 eta).  At the
    corner alpha = 1, eta in {0, pi} every beta saturates; the supremum 1
    is returned (the trade-off is discontinuous there).
    """
    if alpha < 0.0 or alpha > 1.0 + POSITIVITY_TOL:
        raise DomainError(f"alpha={alpha} outside [0, 1]")
    if not 0.0 <= eta <= math.pi:
        raise DomainError(f"eta={eta} outside [0, pi]")
    alpha = min(alpha, 1.0)
    denom = 1.0 - (alpha * math.cos(eta)) ** 2
    if denom < 1e-15:
        return 1.0
    return math.sqrt((1.0 - alpha * alpha) / denom)


def equal_sharpness(eta: float) -> float:
    """The common sharpness of the optimal equal-sharpness measurement."""
    if not 0.0 <= eta <= math.pi:
        raise DomainError(f"eta={eta} outside [0, pi]")
    return math.sqrt(1.0 / (1.0 + abs(math.sin(eta))))


def _orthogonal_unit(v: np.ndarray) -> UnitVector3:
    """A deterministic unit vector orthogonal to v."""
    trial = np.array([1.0, 0.0, 0.0]) if abs(v[0]) <= 0.9 else np.array([0.0, 1.0, 0.0])
    u = trial - (trial @ v) * v
    u /= np.linalg.norm(u)
    return UnitVector3.from_array(u)


def build_scheme(a: UnitVector3, b: UnitVector3, alpha: float, beta: float,
                 *, degenerate: str = "raise") -> JointScheme:
    """Construct the optimal joint measurement for a saturating (alpha, beta).

    The pair must lie on the trade-off frontier within 1e-9: above it no
    joint measurement exists, below it the two-axis scheme is not defined
    (its axes would not be unit vectors).

    When p is 0 or 1 one axis is undefined.  With ``degenerate="raise"``
    (default) this raises DegenerateSchemeError; with
    ``degenerate="orthogonal"`` the undefined axis is replaced by an
    arbitrary orthogonal unit vector carrying zero probability weight, which
    keeps angle sweeps closed at their endpoints.
    """
    if degenerate not in ("raise", "orthogonal"):
        raise ValueError(f"degenerate={degenerate!r} must be 'raise' or 'orthogonal'")
    sharp = SharpnessPair(alpha, beta)
    alpha, beta = sharp.alpha, sharp.beta
    v_plus = alpha * a.arr + beta * b.arr
    v_minus = alpha * a.arr - beta * b.arr
    s = float(np.linalg.norm(v_plus))
    d = float(np.linalg.norm(v_minus))
    gap = s + d - 2.0
    if gap > POSITIVITY_TOL:
        raise SharpnessViolationError(
            f"(alpha={alpha}, beta={beta}) violates the sharpness trade-off "
            f"by {gap}; no joint measurement exists"
        )
    if gap < -SATURATION_TOL:
        raise SharpnessViolationError(
            f"(alpha={alpha}, beta={beta}) lies {-gap} inside the trade-off "
            f"frontier; the two-axis scheme requires a saturating pair "
            f"(use max_beta)"
        )
    p = 0.5 * s
    if s <= _DEGENERATE_TOL or d <= _DEGENERATE_TOL:
        if degenerate == "raise":
            raise DegenerateSchemeError(
                f"p={p}: one measurement axis is undefined (parallel or "
                f"anti-parallel sharp limit)"
            )
        if s <= _DEGENERATE_TOL:
            l = UnitVector3.from_array(v_minus / d)
            m = _orthogonal_unit(l.arr)
        else:
            m = UnitVector3.from_array(v_plus / s)
            l = _orthogonal_unit(m.arr)
    else:
        m = UnitVector3.from_array(v_plus / (2.0 * p))
        l = UnitVector3.from_array(v_minus / (2.0 * (1.0 - p)))
    return JointScheme(a=a, b=b, sharpness=sharp, m=m, l=l, p=p)


def joint_distribution(scheme: JointScheme, state: BlochState) -> JointDistribution:
    """Joint outcome probabilities of the scheme on the given state."""
    pm_plus = 0.5 * (1.0 + scheme.m.dot(state))
    pl_plus = 0.5 * (1.0 + scheme.l.dot(state))
    p = scheme.p
    return JointDistribution(
        p_pp=p * pm_plus,
        p_pm=(1.0 - p) * pl_plus,
        p_mp=(1.0 - p) * (1.0 - pl_plus),
        p_mm=p * (1.0 - pm_plus),
    )


def marginal_distributions(scheme: JointScheme, state: BlochState) -> tuple[ProbVector, ProbVector]:
    """Unsharp marginal distributions (1/2 +- alpha/2 a.c etc.).

    Computed directly from the marginal formulas; equals the row/column
    sums of joint_distribution (tested, not assumed).
    """
    ha = 0.5 * scheme.alpha * scheme.a.dot(state)
    hb = 0.5 * scheme.beta * scheme.b.dot(state)
    return (
        ProbVector((0.5 + ha, 0.5 - ha)),
        ProbVector((0.5 + hb, 0.5 - hb)),
    )


def joint_expectations(scheme: JointScheme, state: BlochState) -> tuple[float, float]:
    """Jointly measured expectation values (alpha a.c, beta b.c)."""
    pa, pb = marginal_distributions(scheme, state)
    return pa[0] - pa[1], pb[0] - pb[1]


def pom_elements(scheme: JointScheme) -> list[PomElement]:
    """The four marginal effects, ordered [a+, a-, b+, b-].

    Each pair sums to the identity; expectation() reproduces the marginal
    outcome probabilities.
    """
    half_a = 0.5 * scheme.alpha * scheme.a.arr
    half_b = 0.5 * scheme.beta * scheme.b.arr
    return [
        PomElement(0.5, half_a),
        PomElement(0.5, -half_a),
        PomElement(0.5, half_b),
        PomElement(0.5, -half_b),
    ]
