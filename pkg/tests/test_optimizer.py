import math

import numpy as np
import pytest

from jmentropy import (
    BlochState,
    bifurcation_scan,
    build_scheme,
    canonical_axes,
    equal_sharpness,
    find_eta_prime,
    joint_bound_equal_sharpness,
    joint_entropy,
    marginal_entropy_sum,
    minimize_planar,
    minimize_sharp_pair_sum,
    minimize_sphere,
    second_derivative_at_bisector,
)
from jmentropy.bounds import marginal_sum_at_angle
from jmentropy.errors import BracketError, DomainError
from jmentropy.optimizer import probe_states

from conftest import random_frontier_scheme


def equal_scheme(eta):
    a, b = canonical_axes(eta)
    alpha = equal_sharpness(eta)
    return build_scheme(a, b, alpha, alpha, degenerate="orthogonal")


class TestMinimizePlanar:
    def test_marginal_small_angle_bisector(self):
        eta = 1.0
        res = minimize_planar(marginal_entropy_sum, equal_scheme(eta))
        assert res.theta_star == pytest.approx(eta / 2, abs=1e-5)

    def test_marginal_complementary_eigenstates(self):
        eta = math.pi / 2
        res = minimize_planar(marginal_entropy_sum, equal_scheme(eta))
        folded = sorted({round(t % math.pi, 6) for t in res.all_minima})
        assert folded == pytest.approx([0.0, eta], abs=1e-5)

    def test_joint_minimizer_is_m_eigenstate(self):
        eta = 1.2
        scheme = equal_scheme(eta)
        res = minimize_planar(joint_entropy, scheme)
        assert res.theta_star == pytest.approx(eta / 2, abs=1e-8)
        assert res.value == pytest.approx(
            joint_bound_equal_sharpness(scheme.alpha, scheme.a, scheme.b), abs=1e-9
        )

    def test_deterministic(self):
        scheme = equal_scheme(1.3)
        r1 = minimize_planar(marginal_entropy_sum, scheme)
        r2 = minimize_planar(marginal_entropy_sum, scheme)
        assert r1 == r2

    def test_refinement_never_above_coarse_grid(self, rng):
        for _ in range(20):
            scheme = random_frontier_scheme(rng)
            res = minimize_planar(joint_entropy, scheme, grid_n=512)
            thetas = np.arange(512) * (2.0 * math.pi / 512)
            coarse = min(
                joint_entropy(scheme, BlochState(
                    math.cos(t) * scheme.a.arr
                    + math.sin(t) * _e2(scheme)))
                for t in thetas
            )
            assert res.value <= coarse + 1e-12

    def test_value_below_random_probes(self, rng):
        scheme = random_frontier_scheme(rng)
        res = minimize_planar(marginal_entropy_sum, scheme)
        for state in probe_states(1000, seed=5):
            assert res.value <= marginal_entropy_sum(scheme, state) + 1e-9

    def test_generic_callable_matches_fast_path(self):
        scheme = equal_scheme(0.9)

        def objective(s, state):
            return marginal_entropy_sum(s, state)

        fast = minimize_planar(marginal_entropy_sum, scheme)
        slow = minimize_planar(objective, scheme)
        assert slow.value == pytest.approx(fast.value, abs=1e-9)
        assert slow.theta_star == pytest.approx(fast.theta_star, abs=1e-4)

    def test_string_objectives(self):
        scheme = equal_scheme(0.9)
        assert minimize_planar("marginal-sum", scheme).value == pytest.approx(
            minimize_planar(marginal_entropy_sum, scheme).value, abs=1e-12
        )
        assert minimize_planar("joint-entropy", scheme).value == pytest.approx(
            minimize_planar(joint_entropy, scheme).value, abs=1e-12
        )
        with pytest.raises(DomainError):
            minimize_planar("nonsense", scheme)

    def test_grid_contract(self):
        with pytest.raises(DomainError):
            minimize_planar(marginal_entropy_sum, equal_scheme(1.0), grid_n=100)


class TestMinimizeSphere:
    def test_agrees_with_planar(self, rng):
        for _ in range(6):
            scheme = random_frontier_scheme(rng)
            planar = minimize_planar(marginal_entropy_sum, scheme)
            sphere = minimize_sphere(marginal_entropy_sum, scheme)
            assert sphere.value == pytest.approx(planar.value, abs=1e-6)

    def test_commuting_case(self):
        scheme = equal_scheme(0.0)
        res = minimize_sphere(joint_entropy, scheme)
        assert res.value == pytest.approx(0.0, abs=1e-9)

    def test_mixed_states_never_beat_pure(self, rng):
        scheme = random_frontier_scheme(rng)
        best = minimize_planar(marginal_entropy_sum, scheme).value
        for _ in range(200):
            c = rng.normal(size=3)
            c *= rng.uniform(0.0, 0.999) / np.linalg.norm(c)
            assert marginal_entropy_sum(scheme, BlochState(c)) >= best - 1e-12

    def test_generic_callable(self):
        scheme = equal_scheme(1.1)
        res = minimize_sphere(lambda s, st: marginal_entropy_sum(s, st), scheme)
        assert res.value == pytest.approx(
            minimize_planar(marginal_entropy_sum, scheme).value, abs=1e-6
        )


def _e2(scheme):
    from jmentropy.optimizer import _scheme_basis

    return _scheme_basis(scheme)[1]


class TestSecondDerivative:
    def test_positive_below_critical_angle(self):
        eta = 0.3
        assert second_derivative_at_bisector(equal_sharpness(eta), eta) > 0.0

    def test_negative_above_critical_angle(self):
        eta = 1.47
        assert second_derivative_at_bisector(equal_sharpness(eta), eta) < 0.0

    def test_matches_finite_differences(self):
        # central second difference of the marginal sum along theta
        h = 1e-4
        checked = 0
        for alpha in (0.35, 0.55, 0.75, 0.95):
            for eta in (0.5, 1.0, 1.9, 2.4, 2.9):
                closed = second_derivative_at_bisector(alpha, eta)
                t = eta / 2
                fd = (
                    marginal_sum_at_angle(alpha, alpha, eta, t + h)
                    - 2.0 * marginal_sum_at_angle(alpha, alpha, eta, t)
                    + marginal_sum_at_angle(alpha, alpha, eta, t - h)
                ) / (h * h)
                assert abs(closed) > 1e-6
                assert abs(closed - fd) <= 1e-5 * abs(closed), (alpha, eta)
                checked += 1
        assert checked == 20

    def test_domain(self):
        with pytest.raises(DomainError):
            second_derivative_at_bisector(0.0, 1.0)
        with pytest.raises(DomainError):
            second_derivative_at_bisector(0.5, 0.0)


class TestFindEtaPrime:
    def test_equal_sharpness_critical_angle(self):
        assert find_eta_prime() == pytest.approx(1.46117, abs=1e-4)

    def test_sharp_rule_reported_against_published_constant(self):
        # informational: the alpha=1 curvature root lands close to the
        # published separate-measurement constant, but equality is not claimed
        root = find_eta_prime(lambda eta: 1.0)
        assert 0.0 < root < math.pi
        assert abs(root - 1.17056) < 1e-2

    def test_sign_scan_monotone_across_root(self):
        root = find_eta_prime()
        etas = np.linspace(0.05, math.pi - 0.05, 100)
        signs = np.sign([
            second_derivative_at_bisector(equal_sharpness(float(e)), float(e))
            for e in etas
        ])
        flips = np.flatnonzero(np.diff(signs))
        assert len(flips) == 1
        assert etas[flips[0]] < root < etas[flips[0] + 1]

    def test_bad_bracket(self):
        with pytest.raises(BracketError):
            find_eta_prime(bracket=(0.2, 0.3))

    def test_intermediate_fixed_rule_has_root(self):
        root = find_eta_prime(lambda eta: 0.5)
        assert 0.0 < root < math.pi


class TestBifurcation:
    def test_complementary_pair(self):
        scan = bifurcation_scan(math.pi / 2)
        assert scan.bifurcated
        assert len(scan.branch_thetas) == 2
        assert scan.branch_thetas[0] == pytest.approx(0.0, abs=1e-5)
        assert scan.branch_thetas[1] == pytest.approx(math.pi / 2, abs=1e-5)
        for ha, hb in scan.branch_entropy_pairs:
            assert abs(ha - hb) > 1e-3

    def test_below_window_single_bisector(self):
        scan = bifurcation_scan(1.0)
        assert not scan.bifurcated
        assert scan.branch_thetas == pytest.approx((0.5,), abs=1e-5)

    def test_joint_minimizer_has_equal_marginals(self):
        from jmentropy import binary_entropy, marginal_distributions, planar_state

        for eta in (1.0, 1.48, math.pi / 2, 1.66, 2.2):
            scheme = equal_scheme(eta)
            res = minimize_planar(joint_entropy, scheme)
            state = planar_state(res.theta_star, scheme.a, scheme.b)
            pa, pb = marginal_distributions(scheme, state)
            assert abs(binary_entropy(pa[0]) - binary_entropy(pb[0])) < 1e-9


class TestSharpPairSum:
    def test_complementary_pair_bit(self):
        a, b = canonical_axes(math.pi / 2)
        res = minimize_sharp_pair_sum(a, b)
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_degenerate_pair(self):
        a, b = canonical_axes(0.0)
        res = minimize_sharp_pair_sum(a, b)
        assert res.value == pytest.approx(0.0, abs=1e-12)
