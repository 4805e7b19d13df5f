import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jmentropy import (
    BlochState,
    ProbVector,
    UnitVector3,
    angle_between,
    binary_entropy,
    planar_state,
    shannon_entropy,
)
from jmentropy.errors import (
    DegeneratePlaneError,
    DomainError,
    InvalidDistributionError,
    NormalizationError,
)


class TestUnitVector3:
    def test_renormalizes_small_drift(self):
        v = UnitVector3(1.0 + 5e-13, 0.0, 0.0)
        assert v.x == 1.0

    def test_rejects_non_unit(self):
        with pytest.raises(NormalizationError):
            UnitVector3(1.0, 1.0, 0.0)

    def test_normalize_constructor(self):
        v = UnitVector3.normalize(3.0, 4.0, 0.0)
        assert v.x == pytest.approx(0.6)
        assert v.y == pytest.approx(0.8)

    def test_normalize_rejects_zero(self):
        with pytest.raises(NormalizationError):
            UnitVector3.normalize(0.0, 0.0, 0.0)

    def test_dot_and_neg(self):
        z = UnitVector3(0.0, 0.0, 1.0)
        assert z.dot(-z) == -1.0


class TestBlochState:
    def test_rejects_outside_ball(self):
        with pytest.raises(NormalizationError):
            BlochState(np.array([1.0, 1.0, 0.0]))

    def test_pure_flag(self):
        assert BlochState(np.array([0.0, 0.0, 1.0])).is_pure
        assert not BlochState(np.array([0.0, 0.0, 0.5])).is_pure

    def test_immutable(self):
        s = BlochState(np.array([0.3, 0.0, 0.0]))
        with pytest.raises(ValueError):
            s.c[0] = 1.0


class TestProbVector:
    def test_accepts_rounding_noise(self):
        p = ProbVector((0.5, 0.5 + 1e-13, -1e-13))
        assert p[2] == 0.0

    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidDistributionError):
            ProbVector((0.5, 0.4))

    def test_rejects_negative(self):
        with pytest.raises(InvalidDistributionError):
            ProbVector((1.1, -0.1))


class TestAngleBetween:
    def test_identical(self):
        z = UnitVector3(0.0, 0.0, 1.0)
        assert angle_between(z, z) == 0.0

    def test_orthogonal(self):
        assert angle_between(UnitVector3(0, 0, 1), UnitVector3(1, 0, 0)) == pytest.approx(
            math.pi / 2
        )

    def test_rotation_by_one_radian(self):
        a = UnitVector3(0.0, 0.0, 1.0)
        b = UnitVector3(math.sin(1.0), 0.0, math.cos(1.0))
        assert angle_between(a, b) == pytest.approx(1.0, abs=1e-12)


class TestBinaryEntropy:
    def test_uniform(self):
        assert binary_entropy(0.5) == 1.0

    def test_deterministic_endpoints(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_complementary_equal_sharpness_value(self):
        # the saturating argument 1/2 + 1/(2 sqrt 2) of the complementary case
        x = 0.5 + 0.5 / math.sqrt(2.0)
        assert binary_entropy(x) == pytest.approx(0.60088, abs=1e-4)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            binary_entropy(1.1)
        with pytest.raises(DomainError):
            binary_entropy(-0.1)

    def test_symmetry_grid(self):
        xs = np.linspace(0.0, 1.0, 1001)
        for x in xs:
            assert abs(binary_entropy(x) - binary_entropy(1.0 - x)) <= 1e-12

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    @settings(max_examples=300)
    def test_symmetry_property(self, x):
        assert abs(binary_entropy(x) - binary_entropy(1.0 - x)) <= 1e-12

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    @settings(max_examples=300)
    def test_bounded(self, x):
        assert 0.0 <= binary_entropy(x) <= 1.0


class TestShannonEntropy:
    def test_deterministic(self):
        assert shannon_entropy((1.0, 0.0, 0.0, 0.0)) == 0.0

    def test_uniform_four(self):
        assert shannon_entropy((0.25, 0.25, 0.25, 0.25)) == pytest.approx(2.0, abs=1e-15)

    def test_half_quarter_quarter(self):
        # -1/2 log 1/2 - 2 * 1/4 log 1/4 = 0.5 + 1.0
        assert shannon_entropy((0.5, 0.25, 0.25, 0.0)) == pytest.approx(1.5, abs=1e-15)

    def test_invalid(self):
        with pytest.raises(InvalidDistributionError):
            shannon_entropy((0.7, 0.7))

    @given(st.lists(st.floats(min_value=1e-6, max_value=1.0), min_size=1, max_size=8))
    @settings(max_examples=200)
    def test_range_property(self, weights):
        total = sum(weights)
        p = [w / total for w in weights]
        h = shannon_entropy(ProbVector.of(p))
        assert -1e-12 <= h <= math.log2(len(p)) + 1e-9


class TestPlanarState:
    A = UnitVector3(0.0, 0.0, 1.0)

    def b_at(self, eta):
        return UnitVector3(math.sin(eta), 0.0, math.cos(eta))

    def test_zero_rotation_gives_a(self):
        c = planar_state(0.0, self.A, self.b_at(1.1))
        assert np.allclose(c.c, self.A.arr, atol=1e-15)

    def test_full_rotation_gives_b(self):
        b = self.b_at(1.1)
        c = planar_state(1.1, self.A, b)
        assert np.allclose(c.c, b.arr, atol=1e-12)

    def test_bisector(self):
        eta = 0.9
        b = self.b_at(eta)
        c = planar_state(eta / 2, self.A, b)
        expected = (self.A.arr + b.arr) / np.linalg.norm(self.A.arr + b.arr)
        assert np.allclose(c.c, expected, atol=1e-12)
        assert self.A.dot(c) == pytest.approx(math.cos(eta / 2), abs=1e-12)
        assert b.dot(c) == pytest.approx(math.cos(eta / 2), abs=1e-12)

    def test_degenerate_plane_rejected(self):
        with pytest.raises(DegeneratePlaneError):
            planar_state(0.3, self.A, UnitVector3(0.0, 0.0, 1.0))
        with pytest.raises(DegeneratePlaneError):
            planar_state(0.3, self.A, UnitVector3(0.0, 0.0, -1.0))

    def test_theta_grid_invariants(self):
        b = self.b_at(0.7)
        for theta in np.linspace(0.0, 2.0 * math.pi, 360, endpoint=False):
            c = planar_state(float(theta), self.A, b)
            assert abs(np.linalg.norm(c.c) - 1.0) <= 1e-12
            assert abs(self.A.dot(c) - math.cos(theta)) <= 1e-12
