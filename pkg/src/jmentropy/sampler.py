"""Seeded Monte Carlo simulation of the two-axis measurement protocol.

Each shot first draws the measurement axis (m with probability p, else l),
then the outcome along that axis with its Born probability, and relabels
to a joint outcome: m maps +/- to (+,+)/(-,-), l maps +/- to (+,-)/(-,+).

Randomness comes from NumPy's PCG64 generator, which is splittable via
SeedSequence: shots may be partitioned into chunks with independently
derived sub-seeds and the counts merged by addition.  The default
single-chunk mode draws the axis uniforms first and the outcome uniforms
second, and reproduces bit-exactly for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import BlochState, shannon_entropy
from .errors import DomainError, EstimatorUndefinedError
from .measurement import JointDistribution, JointScheme, joint_distribution

GENERATOR_NAME = "numpy-pcg64"


@dataclass(frozen=True, slots=True)
class SampleConfig:
    """Shot count and RNG seed for one simulation run."""

    shots: int
    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.shots, int) or self.shots < 1:
            raise DomainError(f"shots={self.shots} must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed={self.seed} must be a 64-bit unsigned integer")


@dataclass(frozen=True, slots=True)
class EmpiricalResult:
    """Counts and plug-in statistics of one simulation run.

    ``standard_errors`` are per-cell binomial errors sqrt(f(1-f)/shots) of
    the empirical frequencies; ``empirical_entropy`` is the plug-in
    (maximum-likelihood) estimate, reported without bias correction.
    """

    counts: tuple[int, int, int, int]
    empirical_joint: JointDistribution
    empirical_entropy: float
    standard_errors: tuple[float, float, float, float]
    shots: int
    seed: int
    generator: str = GENERATOR_NAME

    def __post_init__(self) -> None:
        if sum(self.counts) != self.shots:
            raise DomainError(
                f"counts {self.counts} sum to {sum(self.counts)}, not shots={self.shots}"
            )


def _chunk_sizes(shots: int, chunks: int) -> list[int]:
    base, extra = divmod(shots, chunks)
    return [base + (1 if i < extra else 0) for i in range(chunks)]


def simulate(scheme: JointScheme, state: BlochState, config: SampleConfig,
             *, chunks: int = 1) -> EmpiricalResult:
    """Sample the joint measurement ``config.shots`` times.

    With ``chunks > 1`` the shots are split across independently seeded
    sub-streams (SeedSequence.spawn) and the counts summed, mirroring a
    worker partition; chunks=1 is the bit-exact sequential reference.
    """
    if chunks < 1:
        raise DomainError(f"chunks={chunks} must be >= 1")
    pm_plus = 0.5 * (1.0 + scheme.m.dot(state))
    pl_plus = 0.5 * (1.0 + scheme.l.dot(state))
    totals = np.zeros(4, dtype=np.int64)
    if chunks == 1:
        rngs_and_sizes = [(np.random.default_rng(config.seed), config.shots)]
    else:
        children = np.random.SeedSequence(config.seed).spawn(chunks)
        rngs_and_sizes = list(zip(
            (np.random.default_rng(s) for s in children),
            _chunk_sizes(config.shots, chunks),
        ))
    for rng, n in rngs_and_sizes:
        if n == 0:
            continue
        u_axis = rng.random(n)
        u_out = rng.random(n)
        totals += np.array(
            _kernels.count_joint_outcomes(u_axis, u_out, scheme.p, pm_plus, pl_plus),
            dtype=np.int64,
        )
    counts = tuple(int(c) for c in totals)
    freqs = tuple(c / config.shots for c in counts)
    return EmpiricalResult(
        counts=counts,  # type: ignore[arg-type]
        empirical_joint=JointDistribution(*freqs),
        empirical_entropy=shannon_entropy(freqs),
        standard_errors=tuple(
            math.sqrt(f * (1.0 - f) / config.shots) for f in freqs
        ),  # type: ignore[arg-type]
        shots=config.shots,
        seed=config.seed,
    )


def estimate_unbiasedness(scheme: JointScheme, state: BlochState,
                          config: SampleConfig) -> tuple[float | None, float | None]:
    """Sharpness estimates (alpha_hat, beta_hat) from sampled expectations.

    alpha_hat = empirical <A_J> / (a.c) and beta_hat = empirical
    <B_J> / (b.c).  A component whose denominator satisfies |.| < 1e-9 is
    undefined (zero signal) and returned as None; if both are undefined the
    call raises instead.
    """
    ac = scheme.a.dot(state)
    bc = scheme.b.dot(state)
    if abs(ac) < 1e-9 and abs(bc) < 1e-9:
        raise EstimatorUndefinedError(
            f"both sharpness estimators undefined: a.c={ac}, b.c={bc} "
            f"(needs |.| >= 1e-9)"
        )
    n_pp, n_pm, n_mp, n_mm = simulate(scheme, state, config).counts
    mean_a = (n_pp + n_pm - n_mp - n_mm) / config.shots
    mean_b = (n_pp + n_mp - n_pm - n_mm) / config.shots
    alpha_hat = mean_a / ac if abs(ac) >= 1e-9 else None
    beta_hat = mean_b / bc if abs(bc) >= 1e-9 else None
    return alpha_hat, beta_hat


def entropy_delta_se(dist: JointDistribution, shots: int) -> float:
    """Delta-method standard error of the plug-in entropy, in bits."""
    ps = [p for p in dist.as_tuple() if p > 0.0]
    h = -sum(p * math.log2(p) for p in ps)
    second = sum(p * math.log2(p) ** 2 for p in ps)
    return math.sqrt(max(second - h * h, 0.0) / shots)


def analytic_cell_standard_errors(scheme: JointScheme, state: BlochState,
                                  shots: int) -> tuple[float, float, float, float]:
    """Binomial standard errors of the four cell frequencies at the
    analytic probabilities (validation aid)."""
    dist = joint_distribution(scheme, state)
    return tuple(
        math.sqrt(p * (1.0 - p) / shots) for p in dist.as_tuple()
    )  # type: ignore[return-value]
