"""Command-line front end.

Subcommands: ``bounds`` (single-point report), ``sweep`` (CSV over an
angle grid), ``eta-prime`` (critical-angle root), ``sample`` (Monte Carlo
run to JSON), ``minimize`` (direct access to the state-space minimizers).

Conventions: angles are radians unless ``--degrees`` is given; CSV/JSON
carry 12 significant digits with ``n/a`` for inapplicable values and never
contain NaN or infinities.  Exit codes: 0 success, 2 invalid parameters,
3 numerical failure, 1 I/O failure.  Only ``sample`` consumes randomness;
everything else is deterministic.  Set THREADS to evaluate sweep grid
points concurrently (rows stay in grid order).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from . import optimizer, sampler
from ._kernels import backend_name
from .core import planar_state
from .errors import (
    BracketError,
    DomainError,
    EstimatorUndefinedError,
    JmentropyError,
)
from .measurement import (
    build_scheme,
    canonical_axes,
    equal_sharpness,
    joint_distribution,
    marginal_distributions,
    max_beta,
)

OUTPUT_IDS = (
    "joint_bound_equal",
    "joint_bound_general",
    "marginal_bound_equal",
    "concavity_bound",
    "kp_bound",
    "gmr_bound",
    "mu_bound",
    "numeric_min_joint",
    "numeric_min_marginal_sum",
    "numeric_min_separate",
    "numeric_min_axes_sharp",
    "min_thetas",
)
_MINIMA_IDS = frozenset(
    ("numeric_min_joint", "numeric_min_marginal_sum", "numeric_min_separate",
     "numeric_min_axes_sharp", "min_thetas")
)


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """Grid and rule of one sweep: eta range, sharpness rule, outputs."""

    eta_min: float
    eta_max: float
    eta_steps: int
    alpha_rule: str
    outputs: tuple[str, ...]

    def __post_init__(self) -> None:
        if not (0.0 <= self.eta_min < self.eta_max <= math.pi + 1e-12):
            raise DomainError(
                f"need 0 <= eta_min < eta_max <= pi, got "
                f"[{self.eta_min}, {self.eta_max}]"
            )
        if self.eta_steps < 2:
            raise DomainError(f"eta_steps={self.eta_steps} must be >= 2")
        unknown = [o for o in self.outputs if o not in OUTPUT_IDS]
        if unknown:
            raise DomainError(
                f"unknown outputs {unknown}; valid: {', '.join(OUTPUT_IDS)}"
            )


def _fmt(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, (tuple, list)):
        return ";".join(_fmt(v) for v in value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise JmentropyError(f"refusing to emit non-finite value {value}")
        return f"{value + 0.0:.12g}"  # normalizes -0.0
    return str(value)


def _require_finite(doc) -> None:
    if isinstance(doc, dict):
        for v in doc.values():
            _require_finite(v)
    elif isinstance(doc, (list, tuple)):
        for v in doc:
            _require_finite(v)
    elif isinstance(doc, float) and not math.isfinite(doc):
        raise JmentropyError(f"refusing to emit non-finite value {doc}")


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _parse_alpha_rule(text: str):
    """Rule string -> (name, eta->alpha callable or None)."""
    if text == "equal-sharpness":
        return text, equal_sharpness
    if text.startswith("fixed:"):
        try:
            val = float(text.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad alpha rule {text!r}") from None
        if not 0.0 <= val <= 1.0:
            raise DomainError(f"fixed alpha {val} outside [0, 1]")
        return text, (lambda eta: val)
    if text == "max-beta-given-alpha":
        return text, None  # alpha supplied separately; beta = max_beta
    raise DomainError(
        f"unknown alpha rule {text!r}; expected equal-sharpness, "
        f"fixed:<alpha> or max-beta-given-alpha"
    )


def _resolve_sharpness(args, eta: float) -> tuple[float, float]:
    if getattr(args, "equal_sharpness", False):
        alpha = equal_sharpness(eta)
        return alpha, alpha
    if args.alpha is None:
        raise DomainError("--alpha is required unless --equal-sharpness is given")
    alpha = args.alpha
    beta = args.beta if args.beta is not None else max_beta(alpha, eta)
    return alpha, beta


def _report_rows(report: bounds_mod.BoundReport) -> list[tuple[str, str]]:
    rows = [
        ("eta", _fmt(report.eta)),
        ("alpha", _fmt(report.alpha)),
        ("beta", _fmt(report.beta)),
        ("p", _fmt(report.p)),
        ("joint_bound_equal", _fmt(report.joint_bound_equal)
         if report.joint_bound_equal is not None
         else "n/a (requires alpha = beta)"),
        ("joint_bound_general", _fmt(report.joint_bound_general)
         if report.joint_bound_general is not None
         else "n/a (overlap formula singular at alpha^2+beta^2=2)"),
        ("marginal_bound_equal", _fmt(report.marginal_bound_equal)
         if report.marginal_bound_equal is not None
         else "n/a (outside validity range or alpha != beta; "
              "numeric minimum applies)"),
        ("concavity_bound", _fmt(report.concavity_bound)),
        ("kp_bound", _fmt(report.kp_bound)),
        ("gmr_bound", _fmt(report.gmr_bound)
         if report.gmr_bound is not None
         else "n/a (outside validity range; numeric minimum applies)"),
        ("mu_bound", _fmt(report.mu_bound)
         if report.mu_bound is not None
         else "n/a (overlap formula singular at alpha^2+beta^2=2)"),
    ]
    for name in ("numeric_min_joint", "numeric_min_marginal_sum",
                 "numeric_min_separate", "numeric_min_axes_sharp",
                 "min_thetas_joint", "min_thetas_marginal"):
        val = getattr(report, name)
        rows.append((name, _fmt(val) if val is not None else "n/a (not computed)"))
    return rows


def _report_json(report: bounds_mod.BoundReport) -> dict:
    doc = {
        "eta": report.eta,
        "alpha": report.alpha,
        "beta": report.beta,
        "p": report.p,
    }
    for name in ("joint_bound_equal", "joint_bound_general",
                 "marginal_bound_equal", "concavity_bound", "kp_bound",
                 "gmr_bound", "mu_bound", "numeric_min_joint",
                 "numeric_min_marginal_sum", "numeric_min_separate",
                 "numeric_min_axes_sharp"):
        val = getattr(report, name)
        doc[name] = val if val is not None else "n/a"
    for name in ("min_thetas_joint", "min_thetas_marginal"):
        val = getattr(report, name)
        doc[name] = list(val) if val is not None else "n/a"
    _require_finite(doc)
    return doc


def cmd_bounds(args) -> int:
    eta = _angle(args.eta, args.degrees)
    if not 0.0 <= eta <= math.pi:
        raise DomainError(f"eta={eta} outside [0, pi]")
    alpha, beta = _resolve_sharpness(args, eta)
    report = bounds_mod.build_report(
        eta, alpha, beta, with_minima=not args.no_minima, grid_n=args.grid_n
    )
    if args.json:
        text = json.dumps(_report_json(report), indent=2)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    else:
        width = max(len(k) for k, _ in _report_rows(report))
        for key, val in _report_rows(report):
            print(f"{key:<{width}}  {val}")
    return 0


def _sweep_points(args, spec: SweepSpec) -> list[tuple[float, float]]:
    """(eta, alpha) grid in deterministic order."""
    etas = np.linspace(spec.eta_min, spec.eta_max, spec.eta_steps)
    _, rule = _parse_alpha_rule(spec.alpha_rule)
    if rule is not None:
        return [(float(e), rule(float(e))) for e in etas]
    # max-beta-given-alpha: alpha from --alpha or an alpha grid
    if args.alpha_steps:
        if args.alpha_min is None or args.alpha_max is None:
            raise DomainError("--alpha-min/--alpha-max required with --alpha-steps")
        if not (0.0 <= args.alpha_min < args.alpha_max <= 1.0):
            raise DomainError("need 0 <= alpha_min < alpha_max <= 1")
        alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_steps)
    elif args.alpha is not None:
        alphas = [args.alpha]
    else:
        raise DomainError(
            "alpha rule max-beta-given-alpha needs --alpha or an alpha grid"
        )
    return [(float(e), float(a)) for a in alphas for e in etas]


def cmd_sweep(args) -> int:
    outputs = tuple(args.outputs.split(",")) if args.outputs else OUTPUT_IDS
    spec = SweepSpec(
        eta_min=_angle(args.eta_min, args.degrees),
        eta_max=_angle(args.eta_max, args.degrees),
        eta_steps=args.eta_steps,
        alpha_rule=args.alpha_rule,
        outputs=outputs,
    )
    points = _sweep_points(args, spec)
    with_minima = bool(_MINIMA_IDS & set(spec.outputs))

    def evaluate(point: tuple[float, float]) -> dict[str, str]:
        eta, alpha = point
        report = bounds_mod.build_report(
            eta, alpha, with_minima=with_minima, grid_n=args.grid_n
        )
        row = {
            "eta": _fmt(report.eta),
            "alpha": _fmt(report.alpha),
            "beta": _fmt(report.beta),
            "p": _fmt(report.p),
        }
        for out in spec.outputs:
            if out == "min_thetas":
                row["min_thetas_joint"] = _fmt(report.min_thetas_joint)
                row["min_thetas_marginal"] = _fmt(report.min_thetas_marginal)
            else:
                row[out] = _fmt(getattr(report, out))
        return row

    threads = 1
    env_threads = os.environ.get("THREADS")
    if env_threads:
        try:
            threads = max(1, int(env_threads))
        except ValueError:
            raise DomainError(f"THREADS={env_threads!r} is not an integer") from None
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, points))
    else:
        rows = [evaluate(pt) for pt in points]

    header = ["eta", "alpha", "beta", "p"]
    for out in spec.outputs:
        if out == "min_thetas":
            header += ["min_thetas_joint", "min_thetas_marginal"]
        else:
            header.append(out)
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_eta_prime(args) -> int:
    name, rule = _parse_alpha_rule(args.alpha_rule)
    if rule is None:
        raise DomainError("eta-prime supports equal-sharpness or fixed:<alpha> rules")
    if name == "equal-sharpness":
        bracket = optimizer.DEFAULT_ETA_PRIME_BRACKET
        root = optimizer.find_eta_prime(tol=args.tol)
    else:
        root = optimizer.find_eta_prime(rule, tol=args.tol)
        bracket = None
    if bracket is None:
        # reconstruct the scanned bracket for reporting
        step = (math.pi - 0.1) / 99
        k = int((root - 0.05) / step)
        bracket = (0.05 + k * step, 0.05 + (k + 1) * step)
    iterations = max(0, math.ceil(math.log2((bracket[1] - bracket[0]) / args.tol)))
    print(f"eta_prime = {root:.6f} rad")
    print(f"rule      = {name}")
    print(f"bracket   = [{bracket[0]:.6f}, {bracket[1]:.6f}]")
    print(f"bisection iterations = {iterations}")
    if name == "fixed:1" or name == "fixed:1.0":
        ref = bounds_mod.GMR_CRITICAL_ANGLE
        print(f"separate-measurement reference constant = {ref} "
              f"(difference {root - ref:+.2e}; informational)")
    return 0


def cmd_sample(args) -> int:
    eta = _angle(args.eta, args.degrees)
    theta = _angle(args.theta, args.degrees)
    if not 0.0 <= eta <= math.pi:
        raise DomainError(f"eta={eta} outside [0, pi]")
    alpha, beta = _resolve_sharpness(args, eta)
    a, b = canonical_axes(eta)
    scheme = build_scheme(a, b, alpha, beta)
    state = planar_state(theta, a, b)
    config = sampler.SampleConfig(shots=args.shots, seed=args.seed)
    result = sampler.simulate(scheme, state, config)
    dist = joint_distribution(scheme, state)
    pa, pb = marginal_distributions(scheme, state)
    try:
        alpha_hat, beta_hat = sampler.estimate_unbiasedness(scheme, state, config)
        estimates = {
            "alpha_hat": alpha_hat if alpha_hat is not None else "n/a",
            "beta_hat": beta_hat if beta_hat is not None else "n/a",
        }
    except EstimatorUndefinedError:
        estimates = {"alpha_hat": "n/a", "beta_hat": "n/a"}
    doc = {
        "config": {"shots": config.shots, "seed": config.seed,
                   "generator": result.generator},
        "scheme": {
            "eta": eta, "alpha": alpha, "beta": beta, "p": scheme.p,
            "a": list(a.arr), "b": list(b.arr),
            "m": list(scheme.m.arr), "l": list(scheme.l.arr),
        },
        "state": {"theta": theta, "bloch": list(state.c)},
        "analytic": {
            "joint": list(dist.as_tuple()),
            "marginal_a": list(pa.entries),
            "marginal_b": list(pb.entries),
            "joint_entropy": bounds_mod.joint_entropy(scheme, state),
            "marginal_entropy_sum": bounds_mod.marginal_entropy_sum(scheme, state),
        },
        "empirical": {
            "counts": list(result.counts),
            "frequencies": list(result.empirical_joint.as_tuple()),
            "entropy": result.empirical_entropy,
            "standard_errors": list(result.standard_errors),
        },
        "estimates": estimates,
    }
    _require_finite(doc)
    with open(args.out, "w") as fh:
        fh.write(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {args.out}")
    return 0


def cmd_minimize(args) -> int:
    eta = _angle(args.eta, args.degrees)
    if not 0.0 <= eta <= math.pi:
        raise DomainError(f"eta={eta} outside [0, pi]")
    alpha, beta = _resolve_sharpness(args, eta)
    a, b = canonical_axes(eta)
    scheme = build_scheme(a, b, alpha, beta, degenerate="orthogonal")
    if args.objective == "separate-sharp":
        if args.sphere:
            raise DomainError("--sphere is not available for separate-sharp")
        res = optimizer.minimize_sharp_pair_sum(a, b, grid_n=args.grid_n)
    elif args.sphere:
        res = optimizer.minimize_sphere(args.objective, scheme,
                                        grid_n=max(64, args.grid_n // 16))
    else:
        res = optimizer.minimize_planar(args.objective, scheme, grid_n=args.grid_n)
    print(f"backend    = {backend_name()}")
    print(f"objective  = {args.objective}")
    print(f"eta        = {_fmt(eta)}")
    print(f"alpha      = {_fmt(alpha)}")
    print(f"beta       = {_fmt(beta)}")
    if args.sphere:
        th, ph = res.theta_star
        print(f"theta_star = {_fmt(th)}")
        print(f"phi_star   = {_fmt(ph)}")
    else:
        print(f"theta_star = {_fmt(res.theta_star)}")
    print(f"value      = {_fmt(res.value)}")
    print(f"all_minima = {_fmt(res.all_minima)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jmentropy",
        description="Entropic uncertainty of joint qubit spin measurements: "
                    "bounds, numerical minima, and Monte Carlo validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, theta=False):
        p.add_argument("--eta", type=float, required=True,
                       help="angle between the two target spin axes")
        p.add_argument("--alpha", type=float, default=None,
                       help="sharpness of the first observable")
        p.add_argument("--beta", type=float, default=None,
                       help="sharpness of the second observable "
                            "(default: the largest value allowed)")
        p.add_argument("--equal-sharpness", action="store_true",
                       help="use the optimal equal sharpness for this eta")
        p.add_argument("--degrees", action="store_true",
                       help="interpret angles in degrees")
        if theta:
            p.add_argument("--theta", type=float, required=True,
                           help="state angle from the first axis, in the "
                                "plane of the two axes")

    p_bounds = sub.add_parser("bounds", help="evaluate every bound at one point")
    add_common(p_bounds)
    p_bounds.add_argument("--no-minima", action="store_true",
                          help="skip the numeric minimizers")
    p_bounds.add_argument("--grid-n", type=int, default=2048)
    p_bounds.add_argument("--json", metavar="PATH", default=None,
                          help="write a JSON report ('-' for stdout)")
    p_bounds.set_defaults(func=cmd_bounds)

    p_sweep = sub.add_parser("sweep", help="evaluate bounds/minima over a grid")
    p_sweep.add_argument("--eta-min", type=float, default=0.0)
    p_sweep.add_argument("--eta-max", type=float, default=math.pi)
    p_sweep.add_argument("--eta-steps", type=int, required=True)
    p_sweep.add_argument("--alpha-rule", default="equal-sharpness",
                         help="equal-sharpness | fixed:<alpha> | "
                              "max-beta-given-alpha")
    p_sweep.add_argument("--alpha", type=float, default=None,
                         help="alpha for the max-beta-given-alpha rule")
    p_sweep.add_argument("--alpha-min", type=float, default=None)
    p_sweep.add_argument("--alpha-max", type=float, default=None)
    p_sweep.add_argument("--alpha-steps", type=int, default=None,
                         help="alpha grid size (2-D sweep)")
    p_sweep.add_argument("--outputs", default=None,
                         help=f"comma list from: {', '.join(OUTPUT_IDS)}")
    p_sweep.add_argument("--grid-n", type=int, default=2048)
    p_sweep.add_argument("--degrees", action="store_true")
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_eta = sub.add_parser("eta-prime", help="root of the curvature condition")
    p_eta.add_argument("--alpha-rule", default="equal-sharpness",
                       help="equal-sharpness | fixed:<alpha>")
    p_eta.add_argument("--tol", type=float, default=1e-8)
    p_eta.set_defaults(func=cmd_eta_prime)

    p_sample = sub.add_parser("sample", help="Monte Carlo simulation to JSON")
    add_common(p_sample, theta=True)
    p_sample.add_argument("--shots", type=int, required=True)
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--out", required=True, help="JSON output path")
    p_sample.set_defaults(func=cmd_sample)

    p_min = sub.add_parser("minimize", help="run a state-space minimizer")
    add_common(p_min)
    p_min.add_argument("--objective", default="marginal-sum",
                       choices=["joint-entropy", "marginal-sum", "separate-sharp"])
    p_min.add_argument("--sphere", action="store_true",
                       help="minimize over the full sphere instead of the plane")
    p_min.add_argument("--grid-n", type=int, default=2048)
    p_min.set_defaults(func=cmd_minimize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BracketError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (JmentropyError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
