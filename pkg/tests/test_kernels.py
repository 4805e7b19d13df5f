"""Backend consistency: the pure backend always runs; when the compiled
extension is present the two must agree to floating-point roundoff, and the
kernel objectives must match the reference entropy functionals."""

import math

import numpy as np
import pytest

from jmentropy import (
    binary_entropy,
    joint_entropy,
    marginal_entropy_sum,
    planar_state,
)
from jmentropy._kernels import _purepy, backend_name
from jmentropy.optimizer import _joint_params, _marginal_params, _scheme_basis

from conftest import random_frontier_scheme

try:
    from jmentropy._kernels import _speedups
except ImportError:
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="compiled backend not built")


def random_params(rng):
    return (
        rng.uniform(-0.5, 1.0),
        rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(-math.pi, math.pi),
        rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(-math.pi, math.pi),
    )


class TestPureBackend:
    def test_entropy2_matches_core(self, rng):
        for x in rng.uniform(0.0, 1.0, size=500):
            assert abs(_purepy.entropy2(float(x)) - binary_entropy(float(x))) < 1e-13

    def test_objective_matches_marginal_functional(self, rng):
        for _ in range(25):
            scheme = random_frontier_scheme(rng)
            e1, e2 = _scheme_basis(scheme)
            prm = _marginal_params(scheme, e1, e2)
            for theta in rng.uniform(0.0, 2.0 * math.pi, size=8):
                state = planar_state(float(theta), scheme.a, scheme.b)
                direct = marginal_entropy_sum(scheme, state)
                via_kernel = _purepy.planar_objective(float(theta), *prm.as_args())
                assert abs(direct - via_kernel) < 1e-12

    def test_objective_matches_joint_functional(self, rng):
        for _ in range(25):
            scheme = random_frontier_scheme(rng)
            e1, e2 = _scheme_basis(scheme)
            prm = _joint_params(scheme, e1, e2)
            for theta in rng.uniform(0.0, 2.0 * math.pi, size=8):
                state = planar_state(float(theta), scheme.a, scheme.b)
                direct = joint_entropy(scheme, state)
                via_kernel = _purepy.planar_objective(float(theta), *prm.as_args())
                assert abs(direct - via_kernel) < 1e-12

    def test_derivative_matches_finite_difference(self, rng):
        h = 1e-6
        for _ in range(200):
            prm = random_params(rng)
            t = rng.uniform(0.0, 2.0 * math.pi)
            d = _purepy.planar_objective_deriv(t, *prm)
            fd = (
                _purepy.planar_objective(t + h, *prm)
                - _purepy.planar_objective(t - h, *prm)
            ) / (2 * h)
            assert abs(d - fd) < 1e-6 * max(1.0, abs(d))


@needs_ext
class TestBackendParity:
    def test_scalar_objective(self, rng):
        for _ in range(300):
            prm = random_params(rng)
            t = rng.uniform(0.0, 2.0 * math.pi)
            assert abs(
                _purepy.planar_objective(t, *prm) - _speedups.planar_objective(t, *prm)
            ) < 1e-13

    def test_derivative(self, rng):
        for _ in range(300):
            prm = random_params(rng)
            t = rng.uniform(0.0, 2.0 * math.pi)
            assert abs(
                _purepy.planar_objective_deriv(t, *prm)
                - _speedups.planar_objective_deriv(t, *prm)
            ) < 1e-12

    def test_grid(self, rng):
        prm = random_params(rng)
        ts = rng.uniform(0.0, 2.0 * math.pi, size=4096)
        a = _purepy.planar_objective_grid(ts, *prm)
        b = _speedups.planar_objective_grid(ts, *prm)
        assert np.max(np.abs(a - b)) < 1e-13

    def test_entropy_array(self, rng):
        xs = rng.uniform(-0.1, 1.1, size=2048)
        a = _purepy.entropy2_array(xs)
        b = _speedups.entropy2_array(xs)
        assert np.max(np.abs(a - b)) < 1e-14

    def test_golden(self, rng):
        for _ in range(50):
            prm = random_params(rng)
            lo = rng.uniform(0.0, math.pi)
            hi = lo + rng.uniform(0.01, 1.0)
            ta, va = _purepy.golden_minimize(*prm, lo, hi, 1e-10, 200)
            tb, vb = _speedups.golden_minimize(*prm, lo, hi, 1e-10, 200)
            assert ta == pytest.approx(tb, abs=1e-9)
            assert va == pytest.approx(vb, abs=1e-12)

    def test_counts_identical(self, rng):
        u1 = rng.random(50_000)
        u2 = rng.random(50_000)
        assert _purepy.count_joint_outcomes(u1, u2, 0.37, 0.81, 0.25) == (
            _speedups.count_joint_outcomes(u1, u2, 0.37, 0.81, 0.25)
        )


def test_backend_name_is_valid():
    assert backend_name() in ("python", "compiled")
