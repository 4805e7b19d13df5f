"""Joint measurement of two qubit spin components and its entropic cost.

Builds the optimal two-axis joint measurement for a pair of spin
directions, evaluates its outcome statistics, and computes every closed-
form lower bound on the joint entropy and the marginal entropy sum,
checked against brute-force minimization over quantum states.
"""

from ._kernels import backend_name
from .bounds import (
    BoundReport,
    build_report,
    concavity_bound,
    gmr_separate_bound,
    joint_bound_equal_sharpness,
    joint_bound_general,
    joint_entropy,
    kp_bound,
    maassen_uffink_bound,
    marginal_bound_equal_sharpness,
    marginal_entropy_sum,
    overlap_max,
)
from .core import (
    BlochState,
    ProbVector,
    UnitVector3,
    angle_between,
    binary_entropy,
    planar_state,
    shannon_entropy,
)
from .measurement import (
    JointDistribution,
    JointScheme,
    PomElement,
    SharpnessPair,
    build_scheme,
    canonical_axes,
    equal_sharpness,
    joint_distribution,
    joint_expectations,
    marginal_distributions,
    max_beta,
    pom_elements,
)
from .optimizer import (
    BifurcationResult,
    MinimizationResult,
    bifurcation_scan,
    find_eta_prime,
    minimize_planar,
    minimize_sharp_pair_sum,
    minimize_sphere,
    second_derivative_at_bisector,
)
from .sampler import EmpiricalResult, SampleConfig, estimate_unbiasedness, simulate

__version__ = "0.1.0"

__all__ = [
    "BlochState",
    "BifurcationResult",
    "BoundReport",
    "EmpiricalResult",
    "JointDistribution",
    "JointScheme",
    "MinimizationResult",
    "PomElement",
    "ProbVector",
    "SampleConfig",
    "SharpnessPair",
    "UnitVector3",
    "angle_between",
    "backend_name",
    "bifurcation_scan",
    "binary_entropy",
    "build_report",
    "build_scheme",
    "canonical_axes",
    "concavity_bound",
    "equal_sharpness",
    "estimate_unbiasedness",
    "find_eta_prime",
    "gmr_separate_bound",
    "joint_bound_equal_sharpness",
    "joint_bound_general",
    "joint_distribution",
    "joint_entropy",
    "joint_expectations",
    "kp_bound",
    "maassen_uffink_bound",
    "marginal_bound_equal_sharpness",
    "marginal_distributions",
    "marginal_entropy_sum",
    "max_beta",
    "minimize_planar",
    "minimize_sharp_pair_sum",
    "minimize_sphere",
    "overlap_max",
    "planar_state",
    "pom_elements",
    "second_derivative_at_bisector",
    "shannon_entropy",
    "simulate",
]
