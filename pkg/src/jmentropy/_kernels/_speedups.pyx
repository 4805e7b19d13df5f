# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: scalar-loop versions of the hot numerics.

Same API and semantics as ``_purepy``; kept intentionally small.  The
planar objective is

    f(theta) = c0 + w1*H2((1 + r1 cos(theta - phi1))/2)
             + w2*H2((1 + r2 cos(theta - phi2))/2)

with (1 - s)/2 evaluated as (1-r)/2 + r sin^2(delta/2) so tangential
extrema keep full precision.
"""

from libc.math cimport cos, log2, sin, sqrt

import numpy as np

BACKEND = "compiled"

cdef double INVPHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _h2(double x) nogil:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


cdef inline double _term(double theta, double r, double phi) nogil:
    cdef double half = 0.5 * (theta - phi)
    cdef double sh = sin(half)
    cdef double ch = cos(half)
    cdef double u = 0.5 * (1.0 - r) + r * sh * sh
    cdef double x = 0.5 * (1.0 - r) + r * ch * ch
    if u <= 0.0 or x <= 0.0:
        return 0.0
    return -x * log2(x) - u * log2(u)


cdef inline double _obj(double theta, double c0, double w1, double r1,
                        double phi1, double w2, double r2, double phi2) nogil:
    return c0 + w1 * _term(theta, r1, phi1) + w2 * _term(theta, r2, phi2)


def entropy2(double x):
    """Binary entropy in bits; out-of-range x is clamped (no information)."""
    return _h2(x)


def entropy2_array(x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] xv = x.reshape(-1)
    out = np.empty_like(x)
    cdef double[::1] ov = out.reshape(-1)
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _h2(xv[i])
    return out


def planar_objective(double theta, double c0, double w1, double r1,
                     double phi1, double w2, double r2, double phi2):
    return _obj(theta, c0, w1, r1, phi1, w2, r2, phi2)


def planar_objective_grid(thetas, double c0, double w1, double r1, double phi1,
                          double w2, double r2, double phi2):
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] tv = thetas
    out = np.empty_like(thetas)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = tv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _obj(tv[i], c0, w1, r1, phi1, w2, r2, phi2)
    return out


def planar_objective_deriv(double theta, double c0, double w1, double r1,
                           double phi1, double w2, double r2, double phi2):
    """d/dtheta of the planar objective, in bits per radian."""
    cdef double total = 0.0
    cdef double delta, half, sh, ch, u, x
    cdef int k
    cdef double w, r, phi
    for k in range(2):
        if k == 0:
            w, r, phi = w1, r1, phi1
        else:
            w, r, phi = w2, r2, phi2
        if w == 0.0 or r == 0.0:
            continue
        delta = theta - phi
        half = 0.5 * delta
        sh = sin(half)
        ch = cos(half)
        u = 0.5 * (1.0 - r) + r * sh * sh
        x = 0.5 * (1.0 - r) + r * ch * ch
        if u <= 0.0 or x <= 0.0:
            continue
        total += w * 0.5 * (-r * sin(delta)) * log2(u / x)
    return total


def golden_minimize(double c0, double w1, double r1, double phi1, double w2,
                    double r2, double phi2, double lo, double hi,
                    double xtol, int maxiter):
    """Golden-section minimum of the planar objective on [lo, hi]."""
    cdef double a = lo, b = hi
    cdef double c = b - INVPHI * (b - a)
    cdef double d = a + INVPHI * (b - a)
    cdef double fc = _obj(c, c0, w1, r1, phi1, w2, r2, phi2)
    cdef double fd = _obj(d, c0, w1, r1, phi1, w2, r2, phi2)
    cdef int it = 0
    with nogil:
        while (b - a) > xtol and it < maxiter:
            if fc < fd:
                b = d
                d = c
                fd = fc
                c = b - INVPHI * (b - a)
                fc = _obj(c, c0, w1, r1, phi1, w2, r2, phi2)
            else:
                a = c
                c = d
                fc = fd
                d = a + INVPHI * (b - a)
                fd = _obj(d, c0, w1, r1, phi1, w2, r2, phi2)
            it += 1
    if fc < fd:
        return c, fc
    return d, fd


def count_joint_outcomes(u_axis, u_out, double p, double pm_plus,
                         double pl_plus):
    """Classify shot uniforms into the four joint outcomes (++, +-, -+, --)."""
    u_axis = np.ascontiguousarray(u_axis, dtype=np.float64)
    u_out = np.ascontiguousarray(u_out, dtype=np.float64)
    cdef double[::1] ua = u_axis
    cdef double[::1] uo = u_out
    cdef Py_ssize_t i, n = ua.shape[0]
    cdef long long n_pp = 0, n_pm = 0, n_mp = 0, n_mm = 0
    with nogil:
        for i in range(n):
            if ua[i] < p:
                if uo[i] < pm_plus:
                    n_pp += 1
                else:
                    n_mm += 1
            else:
                if uo[i] < pl_plus:
                    n_pm += 1
                else:
                    n_mp += 1
    return int(n_pp), int(n_pm), int(n_mp), int(n_mm)
