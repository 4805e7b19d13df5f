import math

import numpy as np
import pytest

from jmentropy import BlochState, UnitVector3, build_scheme, max_beta


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_unit_vector(rng) -> UnitVector3:
    v = rng.normal(size=3)
    return UnitVector3.normalize(*v)


def random_pure_state(rng) -> BlochState:
    v = rng.normal(size=3)
    return BlochState(v / np.linalg.norm(v))


def random_axes_pair(rng, eta_lo=0.05, eta_hi=math.pi - 0.05):
    """A random axis pair with angle in (eta_lo, eta_hi)."""
    a = random_unit_vector(rng)
    eta = rng.uniform(eta_lo, eta_hi)
    u = rng.normal(size=3)
    u = u - (u @ a.arr) * a.arr
    u /= np.linalg.norm(u)
    b = UnitVector3.from_array(math.cos(eta) * a.arr + math.sin(eta) * u)
    return a, b, eta


def random_frontier_scheme(rng, alpha_lo=0.05):
    """A random optimal scheme: axes plus a saturating sharpness pair."""
    a, b, eta = random_axes_pair(rng)
    alpha = rng.uniform(alpha_lo, 1.0)
    beta = max_beta(alpha, eta)
    return build_scheme(a, b, alpha, beta)
