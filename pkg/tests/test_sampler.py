import math

import numpy as np
import pytest

from jmentropy import (
    BlochState,
    SampleConfig,
    build_scheme,
    canonical_axes,
    equal_sharpness,
    estimate_unbiasedness,
    joint_distribution,
    joint_entropy,
    max_beta,
    planar_state,
    simulate,
)
from jmentropy.errors import DomainError, EstimatorUndefinedError
from jmentropy.sampler import (
    GENERATOR_NAME,
    analytic_cell_standard_errors,
    entropy_delta_se,
)


def complementary_scheme():
    eta = math.pi / 2
    a, b = canonical_axes(eta)
    alpha = equal_sharpness(eta)
    return build_scheme(a, b, alpha, alpha)


class TestSampleConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            SampleConfig(shots=0, seed=1)
        with pytest.raises(DomainError):
            SampleConfig(shots=10, seed=-1)
        with pytest.raises(DomainError):
            SampleConfig(shots=10, seed=2 ** 64)


class TestSimulate:
    def test_deterministic_given_seed(self):
        scheme = complementary_scheme()
        state = planar_state(0.3, scheme.a, scheme.b)
        cfg = SampleConfig(shots=20_000, seed=123)
        r1 = simulate(scheme, state, cfg)
        r2 = simulate(scheme, state, cfg)
        assert r1.counts == r2.counts
        assert r1.generator == GENERATOR_NAME

    def test_counts_sum_to_shots(self):
        scheme = complementary_scheme()
        state = planar_state(1.1, scheme.a, scheme.b)
        res = simulate(scheme, state, SampleConfig(shots=12_345, seed=9))
        assert sum(res.counts) == 12_345

    def test_impossible_cell_never_fires(self):
        # state on the m axis with equal sharpness: P(-,-) is exactly zero
        scheme = complementary_scheme()
        state = BlochState(scheme.m.arr)
        res = simulate(scheme, state, SampleConfig(shots=200_000, seed=11))
        assert res.counts[3] == 0

    def test_cells_within_five_sigma(self):
        scheme = complementary_scheme()
        state = planar_state(0.0, scheme.a, scheme.b)
        shots = 1_000_000
        res = simulate(scheme, state, SampleConfig(shots=shots, seed=2024))
        dist = joint_distribution(scheme, state)
        ses = analytic_cell_standard_errors(scheme, state, shots)
        for freq, p, se in zip(res.empirical_joint.as_tuple(), dist.as_tuple(), ses):
            assert abs(freq - p) <= 5.0 * se

    def test_entropy_within_delta_band(self):
        scheme = complementary_scheme()
        state = planar_state(0.0, scheme.a, scheme.b)
        shots = 1_000_000
        res = simulate(scheme, state, SampleConfig(shots=shots, seed=42))
        dist = joint_distribution(scheme, state)
        se = entropy_delta_se(dist, shots)
        assert abs(res.empirical_entropy - joint_entropy(scheme, state)) <= 3.0 * se

    def test_standard_errors_formula(self):
        scheme = complementary_scheme()
        state = planar_state(0.7, scheme.a, scheme.b)
        res = simulate(scheme, state, SampleConfig(shots=5_000, seed=3))
        for f, se in zip(res.empirical_joint.as_tuple(), res.standard_errors):
            assert se == pytest.approx(math.sqrt(f * (1 - f) / 5_000), abs=1e-15)

    def test_chunked_partition_merges_counts(self):
        scheme = complementary_scheme()
        state = planar_state(0.5, scheme.a, scheme.b)
        cfg = SampleConfig(shots=100_001, seed=77)
        res = simulate(scheme, state, cfg, chunks=7)
        assert sum(res.counts) == 100_001
        # sub-streams are independent, so cells still match analytics loosely
        dist = joint_distribution(scheme, state)
        for freq, p in zip(res.empirical_joint.as_tuple(), dist.as_tuple()):
            assert abs(freq - p) < 0.02

    def test_convergence_rate(self):
        # total-variation distance to the analytic law ~ shots^(-1/2)
        scheme = complementary_scheme()
        state = planar_state(0.9, scheme.a, scheme.b)
        analytic = np.array(joint_distribution(scheme, state).as_tuple())
        shot_grid = [1_000, 10_000, 100_000, 1_000_000]
        slopes = []
        for seed in range(20):
            tvs = []
            for shots in shot_grid:
                res = simulate(scheme, state, SampleConfig(shots=shots, seed=seed))
                freqs = np.array(res.empirical_joint.as_tuple())
                tvs.append(max(0.5 * np.abs(freqs - analytic).sum(), 1e-12))
            slope = np.polyfit(np.log2(shot_grid), np.log2(tvs), 1)[0]
            slopes.append(slope)
        assert abs(float(np.median(slopes)) + 0.5) <= 0.1


class TestEstimateUnbiasedness:
    def test_alpha_hat_on_a_axis(self):
        scheme = complementary_scheme()
        state = planar_state(0.0, scheme.a, scheme.b)
        shots = 1_000_000
        alpha_hat, beta_hat = estimate_unbiasedness(
            scheme, state, SampleConfig(shots=shots, seed=5)
        )
        se = math.sqrt((1.0 - scheme.alpha ** 2) / shots)
        assert abs(alpha_hat - scheme.alpha) <= 5.0 * se
        assert beta_hat is None  # b.c = 0 here: zero signal

    def test_zero_sharpness_gives_zero_signal(self):
        eta = 1.2
        a, b = canonical_axes(eta)
        scheme = build_scheme(a, b, 1.0, max_beta(1.0, eta))  # beta = 0
        state = planar_state(0.4, a, b)
        _, beta_hat = estimate_unbiasedness(scheme, state, SampleConfig(10_000, 1))
        assert beta_hat is not None
        assert abs(beta_hat) < 0.05

    def test_sign_flip_invariance_within_band(self):
        scheme = complementary_scheme()
        state = planar_state(0.7, scheme.a, scheme.b)
        flipped = BlochState(-state.c)
        shots = 250_000
        cfg = SampleConfig(shots=shots, seed=31)
        a1, _ = estimate_unbiasedness(scheme, state, cfg)
        a2, _ = estimate_unbiasedness(scheme, flipped, cfg)
        ac = abs(scheme.a.dot(state))
        band = 5.0 * math.sqrt(2.0 / shots) / ac
        assert abs(a1 - a2) <= band

    def test_both_undefined_raises(self):
        scheme = complementary_scheme()
        state = BlochState(np.array([0.0, 1.0, 0.0]))  # orthogonal to a and b
        with pytest.raises(EstimatorUndefinedError):
            estimate_unbiasedness(scheme, state, SampleConfig(100, 0))
