#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Times the three hot kernels on both implementations, plus one end-to-end
state-space minimization with whichever backend is active.  Run the
end-to-end row under the fallback with JMENTROPY_PURE=1.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import time

import numpy as np

from jmentropy import backend_name, build_scheme, canonical_axes, equal_sharpness
from jmentropy import marginal_entropy_sum, minimize_planar
from jmentropy._kernels import _purepy

try:
    from jmentropy._kernels import _speedups
except ImportError:
    _speedups = None

PARAMS = (0.3, 0.6, 0.85, 0.4, 0.4, 0.97, 2.1)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(rng):
    thetas = rng.uniform(0.0, 2.0 * math.pi, size=2048)
    u1 = rng.random(1_000_000)
    u2 = rng.random(1_000_000)
    return {
        "objective grid (2048 pts)": lambda k: k.planar_objective_grid(thetas, *PARAMS),
        "golden refinement": lambda k: k.golden_minimize(*PARAMS, 1.0, 1.01, 1e-11, 200),
        "mc counting (1e6 shots)": lambda k: k.count_joint_outcomes(u1, u2, 0.4, 0.8, 0.3),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = kernel_cases(rng)

    print(f"active package backend: {backend_name()}")
    print(f"{'kernel':<28} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for name, call in cases.items():
        t_py = best_of(lambda: call(_purepy), args.repeat)
        if _speedups is not None:
            t_c = best_of(lambda: call(_speedups), args.repeat)
            print(f"{name:<28} {t_py * 1e6:>10.1f}us {t_c * 1e6:>10.1f}us "
                  f"{t_py / t_c:>8.1f}x")
        else:
            print(f"{name:<28} {t_py * 1e6:>10.1f}us {'n/a':>12} {'n/a':>9}")

    eta = 1.1
    a, b = canonical_axes(eta)
    alpha = equal_sharpness(eta)
    scheme = build_scheme(a, b, alpha, alpha)
    t = best_of(lambda: minimize_planar(marginal_entropy_sum, scheme), args.repeat)
    print(f"\nend-to-end minimize_planar ({backend_name()} backend): {t * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
