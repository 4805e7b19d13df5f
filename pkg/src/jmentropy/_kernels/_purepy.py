"""Pure NumPy/Python kernel backend.

Mirrors the API of the compiled backend (``_speedups``).  All planar
objectives have the common form

    f(theta) = c0 + w1*H2((1 + r1 cos(theta - phi1))/2)
             + w2*H2((1 + r2 cos(theta - phi2))/2)

which covers both the joint-entropy and marginal-entropy-sum functionals
restricted to pure states in a fixed plane.  The amplitude/phase form
matters: (1 - s)/2 is evaluated as (1-r)/2 + r sin^2(delta/2), which stays
accurate near tangential extrema where the direct form loses all digits.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def entropy2(x: float) -> float:
    """Binary entropy in bits; out-of-range x is clamped (no information)."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy2_array(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    xc = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.where(xc > 0.0, xc * np.log2(xc), 0.0)
        out -= np.where(xc < 1.0, (1.0 - xc) * np.log2(1.0 - xc), 0.0)
    return out


def _term(theta: float, r: float, phi: float) -> float:
    half = 0.5 * (theta - phi)
    sh, ch = math.sin(half), math.cos(half)
    u = 0.5 * (1.0 - r) + r * sh * sh  # (1 - s)/2, cancellation-free
    x = 0.5 * (1.0 - r) + r * ch * ch  # (1 + s)/2, cancellation-free
    if u <= 0.0 or x <= 0.0:
        return 0.0
    return -x * math.log2(x) - u * math.log2(u)


def planar_objective(theta: float, c0: float, w1: float, r1: float, phi1: float,
                     w2: float, r2: float, phi2: float) -> float:
    return c0 + w1 * _term(theta, r1, phi1) + w2 * _term(theta, r2, phi2)


def _term_grid(thetas: np.ndarray, r: float, phi: float) -> np.ndarray:
    half = 0.5 * (thetas - phi)
    sh, ch = np.sin(half), np.cos(half)
    u = 0.5 * (1.0 - r) + r * sh * sh
    x = 0.5 * (1.0 - r) + r * ch * ch
    inside = (u > 0.0) & (x > 0.0)
    uc = np.where(inside, u, 0.5)
    xc = np.where(inside, x, 0.5)
    vals = -xc * np.log2(xc) - uc * np.log2(uc)
    return np.where(inside, vals, 0.0)


def planar_objective_grid(thetas: np.ndarray, c0: float, w1: float, r1: float,
                          phi1: float, w2: float, r2: float, phi2: float) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=float)
    return c0 + w1 * _term_grid(thetas, r1, phi1) + w2 * _term_grid(thetas, r2, phi2)


def planar_objective_deriv(theta: float, c0: float, w1: float, r1: float,
                           phi1: float, w2: float, r2: float, phi2: float) -> float:
    """d/dtheta of the planar objective, in bits per radian."""
    total = 0.0
    for w, r, phi in ((w1, r1, phi1), (w2, r2, phi2)):
        if w == 0.0 or r == 0.0:
            continue
        delta = theta - phi
        half = 0.5 * delta
        sh, ch = math.sin(half), math.cos(half)
        u = 0.5 * (1.0 - r) + r * sh * sh
        x = 0.5 * (1.0 - r) + r * ch * ch
        if u <= 0.0 or x <= 0.0:
            continue
        total += w * 0.5 * (-r * math.sin(delta)) * math.log2(u / x)
    return total


def golden_minimize(c0: float, w1: float, r1: float, phi1: float, w2: float,
                    r2: float, phi2: float, lo: float, hi: float,
                    xtol: float, maxiter: int) -> tuple[float, float]:
    """Golden-section minimum of the planar objective on [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = planar_objective(c, c0, w1, r1, phi1, w2, r2, phi2)
    fd = planar_objective(d, c0, w1, r1, phi1, w2, r2, phi2)
    it = 0
    while (b - a) > xtol and it < maxiter:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = planar_objective(c, c0, w1, r1, phi1, w2, r2, phi2)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = planar_objective(d, c0, w1, r1, phi1, w2, r2, phi2)
        it += 1
    if fc < fd:
        return c, fc
    return d, fd


def count_joint_outcomes(u_axis: np.ndarray, u_out: np.ndarray, p: float,
                         pm_plus: float, pl_plus: float) -> tuple[int, int, int, int]:
    """Classify shot uniforms into the four joint outcomes (++, +-, -+, --)."""
    on_m = u_axis < p
    plus = u_out < np.where(on_m, pm_plus, pl_plus)
    n_pp = int(np.count_nonzero(on_m & plus))
    n_mm = int(np.count_nonzero(on_m & ~plus))
    n_pm = int(np.count_nonzero(~on_m & plus))
    n_mp = int(np.count_nonzero(~on_m & ~plus))
    return n_pp, n_pm, n_mp, n_mm
