"""Brute-force numerical oracles for the entropy functionals.

State-space minimization works on a dense angular grid followed by a local
refinement of every basin, so no local minimum can be missed and every
result is deterministic (no randomized restarts).  Pure states suffice:
both functionals are concave in the Bloch vector, so minima sit on the
pure-state boundary; the spherical minimizer exists to verify (not assume)
that the in-plane restriction loses nothing.

The two package functionals (joint entropy, marginal entropy sum) take a
fast path through the kernel backend; arbitrary ``objective(scheme, state)``
callables are supported through a generic evaluation path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels, bounds
from .core import BlochState, UnitVector3, binary_entropy, plane_basis
from .errors import BracketError, DegeneratePlaneError, DomainError
from .measurement import (
    JointScheme,
    build_scheme,
    canonical_axes,
    equal_sharpness,
    marginal_distributions,
)

VALUE_DEGENERACY_TOL = 1e-7   # objective window for "equally global" minima
ANGLE_SEPARATION_TOL = 1e-3   # below this two minimizers count as one

_TWO_PI = 2.0 * math.pi

Objective = Callable[[JointScheme, BlochState], float]


@dataclass(frozen=True, slots=True)
class MinimizationResult:
    """Global minimum of an entropy functional over pure states.

    ``theta_star`` is the smallest-angle global minimizer (planar) or a
    (theta, phi) pair (spherical); ``all_minima`` lists every global
    minimizer found, within VALUE_DEGENERACY_TOL of the minimum and
    separated by more than ANGLE_SEPARATION_TOL.
    """

    theta_star: float | tuple[float, float]
    value: float
    all_minima: tuple


@dataclass(frozen=True, slots=True)
class BifurcationResult(MinimizationResult):
    """Marginal-sum minimizers folded onto [0, pi) (states +-c are
    entropy-equivalent), with the marginal entropies at each branch."""

    bifurcated: bool
    branch_thetas: tuple[float, ...]
    branch_entropy_pairs: tuple[tuple[float, float], ...]


@dataclass(frozen=True, slots=True)
class _PlanarParams:
    """Coefficients of f(t) = c0 + sum_i w_i H2((1 + r_i cos(t - phi_i))/2).

    Amplitude/phase form: the kernels evaluate (1 - s)/2 as
    (1-r)/2 + r sin^2((t-phi)/2), which keeps tangential extrema at full
    precision (the component form loses every digit of 1-s there).
    """

    c0: float
    w1: float
    r1: float
    phi1: float
    w2: float
    r2: float
    phi2: float

    def as_args(self) -> tuple[float, ...]:
        return (self.c0, self.w1, self.r1, self.phi1, self.w2, self.r2, self.phi2)


def _amp_phase(x: float, y: float) -> tuple[float, float]:
    """In-plane components -> (amplitude, phase); amplitude capped at 1."""
    return min(math.hypot(x, y), 1.0), math.atan2(y, x)


def _basis_for_axes(a: UnitVector3, b: UnitVector3) -> tuple[np.ndarray, np.ndarray]:
    """Plane basis for a and b; an arbitrary plane through a if (anti)parallel."""
    try:
        return plane_basis(a, b)
    except DegeneratePlaneError:
        trial = np.array([1.0, 0.0, 0.0]) if abs(a.x) <= 0.9 else np.array([0.0, 1.0, 0.0])
        e2 = trial - (trial @ a.arr) * a.arr
        return a.arr, e2 / np.linalg.norm(e2)


def _scheme_basis(scheme: JointScheme) -> tuple[np.ndarray, np.ndarray]:
    return _basis_for_axes(scheme.a, scheme.b)


def _marginal_params(scheme: JointScheme, e1: np.ndarray, e2: np.ndarray) -> _PlanarParams:
    av, bv = scheme.a.arr, scheme.b.arr
    r1, phi1 = _amp_phase(scheme.alpha * float(av @ e1), scheme.alpha * float(av @ e2))
    r2, phi2 = _amp_phase(scheme.beta * float(bv @ e1), scheme.beta * float(bv @ e2))
    return _PlanarParams(0.0, 1.0, r1, phi1, 1.0, r2, phi2)


def _joint_params(scheme: JointScheme, e1: np.ndarray, e2: np.ndarray) -> _PlanarParams:
    mv, lv = scheme.m.arr, scheme.l.arr
    p = scheme.p
    r1, phi1 = _amp_phase(float(mv @ e1), float(mv @ e2))
    r2, phi2 = _amp_phase(float(lv @ e1), float(lv @ e2))
    return _PlanarParams(_kernels.entropy2(p), p, r1, phi1, 1.0 - p, r2, phi2)


def _sharp_pair_params(u: UnitVector3, v: UnitVector3,
                       e1: np.ndarray, e2: np.ndarray) -> _PlanarParams:
    r1, phi1 = _amp_phase(float(u.arr @ e1), float(u.arr @ e2))
    r2, phi2 = _amp_phase(float(v.arr @ e1), float(v.arr @ e2))
    return _PlanarParams(0.0, 1.0, r1, phi1, 1.0, r2, phi2)


_FAST_KINDS = {
    "joint-entropy": _joint_params,
    "joint": _joint_params,
    "marginal-sum": _marginal_params,
    "marginal": _marginal_params,
    "marginal-entropy-sum": _marginal_params,
}


def _resolve_params(objective: Objective | str, scheme: JointScheme,
                    e1: np.ndarray, e2: np.ndarray) -> _PlanarParams | None:
    if isinstance(objective, str):
        try:
            return _FAST_KINDS[objective](scheme, e1, e2)
        except KeyError:
            raise DomainError(
                f"unknown objective {objective!r}; expected one of "
                f"{sorted(set(_FAST_KINDS))}"
            ) from None
    if objective is bounds.joint_entropy:
        return _joint_params(scheme, e1, e2)
    if objective is bounds.marginal_entropy_sum:
        return _marginal_params(scheme, e1, e2)
    return None


def _golden_generic(f: Callable[[float], float], lo: float, hi: float,
                    xtol: float = 1e-10, maxiter: int = 200) -> tuple[float, float]:
    """Golden-section minimum of an arbitrary scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while (b - a) > xtol and it < maxiter:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        it += 1
    return (c, fc) if fc < fd else (d, fd)


def _planar_deriv(theta: float, prm: _PlanarParams) -> float:
    """d/dtheta of the planar objective (bits per radian)."""
    return _kernels.planar_objective_deriv(theta, *prm.as_args())


def _refine_basin(prm: _PlanarParams, lo: float, hi: float,
                  xtol: float) -> tuple[float, float]:
    """Locate the basin minimum: derivative bisection (near machine
    precision in angle) with golden-section fallback."""
    dlo = _planar_deriv(lo, prm)
    dhi = _planar_deriv(hi, prm)
    if dlo < 0.0 < dhi:
        a, b = lo, hi
        for _ in range(120):
            if b - a <= 1e-13:
                break
            mid = 0.5 * (a + b)
            if _planar_deriv(mid, prm) > 0.0:
                b = mid
            else:
                a = mid
        theta = 0.5 * (a + b)
        return theta, _kernels.planar_objective(theta, *prm.as_args())
    return _kernels.golden_minimize(*prm.as_args(), lo, hi, xtol, 200)


def _local_min_runs(values: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive index runs of cyclic local minima (plateaus grouped)."""
    n = len(values)
    is_min = (values <= np.roll(values, 1)) & (values <= np.roll(values, -1))
    idx = np.flatnonzero(is_min)
    if len(idx) == 0:  # constant grid
        return [(0, n - 1)]
    runs: list[tuple[int, int]] = []
    start = prev = int(idx[0])
    for i in idx[1:]:
        i = int(i)
        if i == prev + 1:
            prev = i
        else:
            runs.append((start, prev))
            start = prev = i
    runs.append((start, prev))
    # merge a run wrapping through index 0
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][1] == n - 1:
        s, _ = runs.pop()
        first = runs.pop(0)
        runs.insert(0, (s - n, first[1]))  # negative start encodes the wrap
    return runs


def _dedup_circular(cands: list[tuple[float, float]],
                    period: float) -> list[tuple[float, float]]:
    """Merge minimizer candidates closer than ANGLE_SEPARATION_TOL (cyclic)."""
    cands = sorted((th % period, v) for th, v in cands)
    merged: list[tuple[float, float]] = []
    for th, v in cands:
        if merged and th - merged[-1][0] <= ANGLE_SEPARATION_TOL:
            if v < merged[-1][1]:
                merged[-1] = (merged[-1][0], v)
            continue
        merged.append((th, v))
    if len(merged) > 1 and (period - merged[-1][0] + merged[0][0]) <= ANGLE_SEPARATION_TOL:
        keep = min(merged[0][1], merged[-1][1])
        merged[0] = (merged[0][0], keep)
        merged.pop()
    return merged


def _minimize_on_circle(grid_values: np.ndarray,
                        refine: Callable[[float, float], tuple[float, float]],
                        grid_n: int) -> tuple[float, float, tuple[float, ...]]:
    """Shared machinery: basin detection, refinement, degeneracy grouping."""
    step = _TWO_PI / grid_n
    best_refined: list[tuple[float, float]] = []
    for start, end in _local_min_runs(grid_values):
        lo = (start - 1) * step
        hi = (end + 1) * step
        seed_idx = (start + end) // 2 % grid_n
        seed = (float(grid_values[seed_idx]), seed_idx * step)
        theta, value = refine(lo, hi)
        if value > seed[0]:  # refinement must never lose to the grid
            value, theta = seed
        best_refined.append((theta, value))
    global_min = min(v for _, v in best_refined)
    cands = [(th, v) for th, v in best_refined if v <= global_min + VALUE_DEGENERACY_TOL]
    reps = _dedup_circular(cands, _TWO_PI)
    thetas = tuple(th for th, _ in reps)
    return thetas[0], global_min, thetas


def _xtol_from(refine_tol: float) -> float:
    if refine_tol <= 0.0:
        raise DomainError(f"refine_tol={refine_tol} must be positive")
    return max(1e-11, min(1e-10, 0.01 * math.sqrt(refine_tol)))


def _minimize_params_planar(prm: _PlanarParams, grid_n: int,
                            refine_tol: float) -> tuple[float, float, tuple[float, ...]]:
    thetas = np.arange(grid_n) * (_TWO_PI / grid_n)
    values = _kernels.planar_objective_grid(thetas, *prm.as_args())
    xtol = _xtol_from(refine_tol)
    return _minimize_on_circle(
        values, lambda lo, hi: _refine_basin(prm, lo, hi, xtol), grid_n
    )


def minimize_planar(objective: Objective | str, scheme: JointScheme,
                    grid_n: int = 2048, refine_tol: float = 1e-12) -> MinimizationResult:
    """Global minimum of the objective over pure states in the a-b plane.

    Dense theta grid over [0, 2pi) followed by per-basin refinement.
    Antipodal states carry equal entropies, so minimizers always come in
    (theta, theta+pi) pairs; all of them are reported.
    """
    if grid_n < 360:
        raise DomainError(f"grid_n={grid_n} below the contract minimum of 360")
    e1, e2 = _scheme_basis(scheme)
    prm = _resolve_params(objective, scheme, e1, e2)
    if prm is not None:
        theta, value, minima = _minimize_params_planar(prm, grid_n, refine_tol)
        return MinimizationResult(theta, value, minima)

    def f(theta: float) -> float:
        c = math.cos(theta) * e1 + math.sin(theta) * e2
        return objective(scheme, BlochState(c))

    grid = np.arange(grid_n) * (_TWO_PI / grid_n)
    values = np.array([f(t) for t in grid])
    xtol = _xtol_from(refine_tol)
    theta, value, minima = _minimize_on_circle(
        values, lambda lo, hi: _golden_generic(f, lo, hi, xtol), grid_n
    )
    return MinimizationResult(theta, value, minima)


def minimize_sharp_pair_sum(u: UnitVector3, v: UnitVector3, *,
                            grid_n: int = 2048,
                            refine_tol: float = 1e-12) -> MinimizationResult:
    """Minimum of H2((1+u.c)/2) + H2((1+v.c)/2) over pure planar states.

    The entropy sum for separate sharp measurements along u and v; used as
    the no-joint-measurement benchmark and as the quantity the
    eigenvector-overlap bound applies to.
    """
    if grid_n < 360:
        raise DomainError(f"grid_n={grid_n} below the contract minimum of 360")
    e1, e2 = _basis_for_axes(u, v)
    prm = _sharp_pair_params(u, v, e1, e2)
    theta, value, minima = _minimize_params_planar(prm, grid_n, refine_tol)
    return MinimizationResult(theta, value, minima)


def _sphere_axis_components(scheme: JointScheme, e1: np.ndarray, e2: np.ndarray,
                            e3: np.ndarray, objective: Objective | str):
    """(c0, [(w, A, B, C), ...]) for the fast spherical evaluation, or None."""
    kind = None
    if isinstance(objective, str):
        if objective in ("joint-entropy", "joint"):
            kind = "joint"
        elif objective in _FAST_KINDS:
            kind = "marginal"
        else:
            raise DomainError(f"unknown objective {objective!r}")
    elif objective is bounds.joint_entropy:
        kind = "joint"
    elif objective is bounds.marginal_entropy_sum:
        kind = "marginal"
    if kind is None:
        return None
    if kind == "joint":
        terms = [(scheme.p, scheme.m.arr), (1.0 - scheme.p, scheme.l.arr)]
        c0 = _kernels.entropy2(scheme.p)
    else:
        terms = [(1.0, scheme.alpha * scheme.a.arr), (1.0, scheme.beta * scheme.b.arr)]
        c0 = 0.0
    comps = []
    for w, ax in terms:
        x, y, z = float(ax @ e1), float(ax @ e2), float(ax @ e3)
        r = math.sqrt(x * x + y * y + z * z)
        if r > 1.0:  # rounding overshoot of a unit axis
            x, y, z = x / r, y / r, z / r
        comps.append((w, x, y, z))
    return c0, comps


def minimize_sphere(objective: Objective | str, scheme: JointScheme,
                    grid_n: int = 64) -> MinimizationResult:
    """Global minimum of the objective over all pure states.

    Two-angle grid (theta around the a-b plane, phi out of it) plus
    alternating 1-D refinement.  Exists to confirm that the planar
    restriction loses nothing; agreement with minimize_planar is a tested
    invariant, not an assumption.
    """
    if grid_n < 64:
        raise DomainError(f"grid_n={grid_n} below the contract minimum of 64 per angle")
    e1, e2 = _scheme_basis(scheme)
    e3 = np.cross(e1, e2)

    fast = _sphere_axis_components(scheme, e1, e2, e3, objective)
    if fast is not None:
        c0, comps = fast

        def f(theta: float, phi: float) -> float:
            cp, sp = math.cos(phi), math.sin(phi)
            ct, st = math.cos(theta), math.sin(theta)
            val = c0
            for w, ax_a, ax_b, ax_c in comps:
                s = cp * (ax_a * ct + ax_b * st) + ax_c * sp
                val += w * _kernels.entropy2(0.5 * (1.0 + s))
            return val

        th = np.arange(grid_n) * (_TWO_PI / grid_n)
        ph = np.linspace(-0.5 * math.pi, 0.5 * math.pi, grid_n)
        tt, pp = np.meshgrid(th, ph, indexing="ij")
        ct, st = np.cos(tt), np.sin(tt)
        cp, sp = np.cos(pp), np.sin(pp)
        values = np.full(tt.shape, c0)
        for w, ax_a, ax_b, ax_c in comps:
            s = cp * (ax_a * ct + ax_b * st) + ax_c * sp
            values += w * _kernels.entropy2_array(0.5 * (1.0 + s))
    else:
        def f(theta: float, phi: float) -> float:
            cp = math.cos(phi)
            c = cp * (math.cos(theta) * e1 + math.sin(theta) * e2) + math.sin(phi) * e3
            return objective(scheme, BlochState(c))

        th = np.arange(grid_n) * (_TWO_PI / grid_n)
        ph = np.linspace(-0.5 * math.pi, 0.5 * math.pi, grid_n)
        values = np.array([[f(t, q) for q in ph] for t in th])

    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    theta, phi = float(th[i]), float(ph[j])
    dth = _TWO_PI / grid_n
    dph = math.pi / (grid_n - 1)
    value = float(values[i, j])
    for _ in range(3):  # alternating 1-D polish; cross-curvature vanishes in-plane
        theta, value = _golden_generic(lambda t: f(t, phi), theta - dth, theta + dth)
        lo = max(phi - dph, -0.5 * math.pi)
        hi = min(phi + dph, 0.5 * math.pi)
        phi, value = _golden_generic(lambda q: f(theta, q), lo, hi)
    theta %= _TWO_PI
    return MinimizationResult((theta, phi), value, ((theta, phi),))


def second_derivative_at_bisector(alpha: float, eta: float) -> float:
    """Curvature of the marginal entropy sum at the bisector state.

    d^2/dtheta^2 [H(A_J)+H(B_J)] at theta = eta/2, for equal sharpnesses
    alpha, in bits per radian^2:

        (-alpha/ln 2) [cos(eta/2) ln((1 - alpha cos(eta/2)) /
                                     (1 + alpha cos(eta/2)))
                       + 2 alpha sin^2(eta/2) / (1 - alpha^2 cos^2(eta/2))]

    Positive curvature means the bisector is a local minimum; the sign
    change as eta grows defines the critical angle.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha={alpha} outside (0, 1]")
    if not 0.0 < eta < math.pi:
        raise DomainError(f"eta={eta} outside (0, pi)")
    c = math.cos(0.5 * eta)
    s = math.sin(0.5 * eta)
    ac = alpha * c
    return (-alpha / math.log(2.0)) * (
        c * math.log((1.0 - ac) / (1.0 + ac))
        + 2.0 * alpha * s * s / (1.0 - ac * ac)
    )


def _bisect_sign_change(f: Callable[[float], float], lo: float, hi: float,
                        tol: float) -> tuple[float, int]:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, 0
    if fhi == 0.0:
        return hi, 0
    if flo * fhi > 0.0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}] (f(lo)={flo}, f(hi)={fhi})"
        )
    iters = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid, iters + 1
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        iters += 1
    return 0.5 * (lo + hi), iters


DEFAULT_ETA_PRIME_BRACKET = (1.0, 1.6)


def find_eta_prime(alpha_rule: Callable[[float], float] | None = None, *,
                   bracket: tuple[float, float] | None = None,
                   tol: float = 1e-8) -> float:
    """Critical angle where the bisector's curvature changes sign.

    ``alpha_rule`` maps eta to the sharpness used in the curvature formula
    (default: the optimal equal sharpness).  The default bracket [1.0, 1.6]
    holds for that rule; for other rules a 100-point sign scan over
    (0.05, pi-0.05) locates a bracket first.  Raises BracketError when no
    sign change exists.
    """
    if alpha_rule is None:
        alpha_rule = equal_sharpness

    def f(eta: float) -> float:
        return second_derivative_at_bisector(alpha_rule(eta), eta)

    if bracket is None:
        if alpha_rule is equal_sharpness:
            bracket = DEFAULT_ETA_PRIME_BRACKET
        else:
            etas = np.linspace(0.05, math.pi - 0.05, 100)
            signs = [f(float(e)) for e in etas]
            bracket = None
            for k in range(len(etas) - 1):
                if signs[k] == 0.0 or signs[k] * signs[k + 1] < 0.0:
                    bracket = (float(etas[k]), float(etas[k + 1]))
                    break
            if bracket is None:
                raise BracketError(
                    "curvature has no sign change over (0.05, pi-0.05) "
                    "for this sharpness rule"
                )
    root, _ = _bisect_sign_change(f, bracket[0], bracket[1], tol)
    return root


def bifurcation_scan(eta: float, *, grid_n: int = 2048,
                     refine_tol: float = 1e-12) -> BifurcationResult:
    """Locate the marginal-sum minimizers of the equal-sharpness scheme.

    Inside the window (eta', pi - eta') the minimum-entropy state splits in
    two, one branch closer to a and one closer to b, with unequal marginal
    entropies; outside it a single bisector branch remains and the result
    is flagged non-bifurcated.  Branch angles are reported modulo pi
    (states +-c are entropy-equivalent).
    """
    alpha = equal_sharpness(eta)
    a, b = canonical_axes(eta)
    scheme = build_scheme(a, b, alpha, alpha, degenerate="orthogonal")
    res = minimize_planar(bounds.marginal_entropy_sum, scheme,
                          grid_n=grid_n, refine_tol=refine_tol)
    folded = _dedup_circular([(th % math.pi, res.value) for th in res.all_minima],
                             math.pi)
    branch_thetas = tuple(th for th, _ in folded)
    e1, e2 = _scheme_basis(scheme)
    pairs = []
    for th in branch_thetas:
        state = BlochState(math.cos(th) * e1 + math.sin(th) * e2)
        pa, pb = marginal_distributions(scheme, state)
        pairs.append((binary_entropy(pa[0]), binary_entropy(pb[0])))
    return BifurcationResult(
        theta_star=res.theta_star,
        value=res.value,
        all_minima=res.all_minima,
        bifurcated=len(branch_thetas) >= 2,
        branch_thetas=branch_thetas,
        branch_entropy_pairs=tuple(pairs),
    )


def probe_states(n: int, seed: int = 0) -> Sequence[BlochState]:
    """Deterministic pseudo-random pure states for validation probes."""
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(n, 3))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    return [BlochState(v) for v in vecs]
