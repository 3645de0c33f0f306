"""Command-line front end: body specs in JSON, subcommands, JSON/CSV reports.

Exit codes: 0 success, 1 verification failure, 2 input error. Every run echoes
its fully resolved configuration (defaults included) so results can be
reproduced from the output alone. Numeric output uses 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from math import pi, sqrt

import numpy as np

from . import __version__
from .bodies import Ball, Box, ConvexBody, Ellipsoid, RegularPolygon, Simplex, VPolytope
from .distance import (
    chord_mean_distance,
    exact_for_body,
    mc_mean_distance,
    sylvester_p4,
)
from .extremal import bound_constants, k_delta, k_prime_delta, lower_bound, verify_limits
from .intrinsic import SphereQuadrature, mean_width, ratio, v1
from .profiles import (
    AffineProfileParams,
    affine_I,
    functional_I,
    functional_I_via_H,
    h0,
    maximize_I,
    minimize_I,
    profile_from_body,
    profile_l1_distance,
    random_profile,
    rearrange,
    uniform_profile,
)
from .sampling import RngStream

FMT = "%.12g"


# -- body specs -----------------------------------------------------------------


def parse_body_spec(spec) -> ConvexBody:
    """Build a validated body from a JSON document or an already-parsed dict."""
    if isinstance(spec, (str, bytes)):
        spec = json.loads(spec)
    if not isinstance(spec, dict):
        raise ValueError("body spec: expected a JSON object")
    if "kind" not in spec:
        raise ValueError("body spec: missing field 'kind'")
    kind = spec["kind"]
    fields = {k: v for k, v in spec.items() if k != "kind"}
    try:
        if kind == "ball":
            return Ball(center=np.asarray(fields["center"], float), radius=fields["radius"])
        if kind == "ellipsoid":
            return Ellipsoid(
                center=np.asarray(fields["center"], float),
                semi_axes=np.asarray(fields["semi_axes"], float),
            )
        if kind == "box":
            return Box(
                lower=np.asarray(fields["lower"], float),
                upper=np.asarray(fields["upper"], float),
            )
        if kind == "simplex":
            return Simplex(vertices=np.asarray(fields["vertices"], float))
        if kind == "vpolytope":
            return VPolytope(vertices=np.asarray(fields["vertices"], float))
        if kind == "regular_polygon":
            return RegularPolygon(n_sides=fields["n"], circumradius=fields["circumradius"])
        if kind == "k_delta":
            return k_delta(int(fields["d"]), float(fields["delta"]))
        if kind == "k_prime_delta":
            return k_prime_delta(int(fields["d"]), float(fields["delta"]))
    except KeyError as exc:
        raise ValueError(f"body spec kind {kind!r}: missing field {exc.args[0]!r}") from None
    raise ValueError(f"body spec: unknown kind {kind!r}")


def serialize_body(body: ConvexBody) -> dict:
    """Inverse of ``parse_body_spec`` up to support-function equality."""
    if isinstance(body, Ball):
        return {"kind": "ball", "center": body.center.tolist(), "radius": body.radius}
    if isinstance(body, Ellipsoid):
        return {
            "kind": "ellipsoid",
            "center": body.center.tolist(),
            "semi_axes": body.semi_axes.tolist(),
        }
    if isinstance(body, Box):
        return {"kind": "box", "lower": body.lower.tolist(), "upper": body.upper.tolist()}
    if isinstance(body, Simplex):
        return {"kind": "simplex", "vertices": body.vertices.tolist()}
    if isinstance(body, VPolytope):
        return {"kind": "vpolytope", "vertices": body.vertices.tolist()}
    if isinstance(body, RegularPolygon):
        return {
            "kind": "regular_polygon",
            "n": body.n_sides,
            "circumradius": body.circumradius,
        }
    raise ValueError(f"cannot serialize body of type {type(body).__name__}")


def _load_body(path: str) -> ConvexBody:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_body_spec(fh.read())


# -- output helpers ----------------------------------------------------------------


def _resolved_threads(args) -> int:
    env = os.environ.get("MEANDIST_THREADS")
    if env is not None:
        return max(int(env), 1)
    if getattr(args, "threads", None):
        return max(args.threads, 1)
    return os.cpu_count() or 1


def _emit(payload: dict, args, human_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload))
    else:
        for line in human_lines:
            print(line)
        print("config: " + json.dumps(payload["config"]))


def _g(x: float) -> str:
    return FMT % x


# -- subcommands ----------------------------------------------------------------------


def _cmd_delta(args) -> int:
    body = _load_body(args.body)
    threads = _resolved_threads(args)
    config = {
        "subcommand": "delta",
        "body": args.body,
        "method": args.method,
        "samples": args.samples,
        "offsets": args.offsets,
        "seed": args.seed,
        "threads": threads,
    }
    target = exact_for_body(body)
    if args.method == "exact":
        if target is None:
            raise ValueError("no exact catalog formula applies to this body; use --method mc or chord")
        payload = {
            "value": target,
            "std_error": 0.0,
            "n": 0,
            "method": "exact",
            "seed": args.seed,
            "target": target,
            "config": config,
        }
        _emit(payload, args, [f"delta = {_g(target)}  (method=exact)"])
        return 0
    if args.method == "mc":
        est = mc_mean_distance(body, args.samples, seed=args.seed, threads=threads)
    else:
        n_dirs = max(args.samples // args.offsets, 1)
        est = chord_mean_distance(body, n_dirs, args.offsets, seed=args.seed)
    payload = {
        "value": est.value,
        "std_error": est.std_error,
        "n": est.n_samples,
        "method": est.method,
        "seed": est.seed,
        "target": target,
        "config": config,
    }
    lines = [
        f"delta = {_g(est.value)}  (method={est.method}, n={est.n_samples}, "
        f"std_error={_g(est.std_error)}, seed={est.seed})"
    ]
    if target is not None:
        lines.append(f"target (catalog) = {_g(target)}")
    _emit(payload, args, lines)
    return 0


def _cmd_sylvester(args) -> int:
    body = _load_body(args.body)
    threads = _resolved_threads(args)
    config = {
        "subcommand": "sylvester",
        "body": args.body,
        "samples": args.samples,
        "seed": args.seed,
        "threads": threads,
    }
    est = sylvester_p4(body, args.samples, seed=args.seed, threads=threads)
    payload = {
        "value": est.value,
        "std_error": est.std_error,
        "n": est.n_samples,
        "method": est.method,
        "seed": est.seed,
        "config": config,
    }
    _emit(
        payload,
        args,
        [
            f"p(4,K) = {_g(est.value)}  (n={est.n_samples}, std_error={_g(est.std_error)}, "
            f"seed={est.seed})",
            f"planar bounds: {_g(35.0 / (12.0 * pi**2))} <= p(4,K) <= {_g(1.0 / 3.0)}",
        ],
    )
    return 0


def _quadrature_for(args, body: ConvexBody) -> SphereQuadrature:
    if getattr(args, "grid", False):
        return SphereQuadrature.grid2d(args.dirs)
    if body.dim == 2 and not getattr(args, "mc_dirs", False):
        return SphereQuadrature.grid2d(args.dirs)
    return SphereQuadrature.mc(args.dirs, seed=args.seed + 101)


def _cmd_v1(args) -> int:
    body = _load_body(args.body)
    quad = _quadrature_for(args, body)
    config = {
        "subcommand": "v1",
        "body": args.body,
        "dirs": args.dirs,
        "quadrature": quad.kind,
        "seed": args.seed,
    }
    value = v1(body, quad)
    w = mean_width(body, quad)
    payload = {
        "value": value,
        "mean_width": w,
        "n_dirs": quad.n,
        "quadrature": quad.kind,
        "seed": args.seed,
        "config": config,
    }
    _emit(
        payload,
        args,
        [f"v1 = {_g(value)}  (mean_width={_g(w)}, quadrature={quad.kind}, n={quad.n})"],
    )
    return 0


def _cmd_ratio(args) -> int:
    body = _load_body(args.body)
    threads = _resolved_threads(args)
    quad = _quadrature_for(args, body)
    config = {
        "subcommand": "ratio",
        "body": args.body,
        "samples": args.samples,
        "dirs": args.dirs,
        "quadrature": quad.kind,
        "seed": args.seed,
        "threads": threads,
    }
    value, se = ratio(
        body, n_samples=args.samples, quadrature=quad, seed=args.seed, threads=threads
    )
    bc = bound_constants(body.dim)
    payload = {
        "value": value,
        "std_error": se,
        "n": args.samples,
        "dirs": quad.n,
        "seed": args.seed,
        "lower": bc.lower,
        "upper": bc.upper,
        "config": config,
    }
    _emit(
        payload,
        args,
        [
            f"ratio = {_g(value)}  (std_error={_g(se)}, n={args.samples}, seed={args.seed})",
            f"bounds (d={body.dim}): {_g(bc.lower)} < ratio < {_g(bc.upper)}",
        ],
    )
    return 0


def _parse_direction(text: str, d: int) -> np.ndarray:
    u = np.asarray([float(x) for x in text.split(",")], dtype=float)
    if u.size != d:
        raise ValueError(f"--direction has {u.size} components, body has dimension {d}")
    nrm = float(np.linalg.norm(u))
    if nrm == 0.0:
        raise ValueError("--direction must be a nonzero vector")
    return u / nrm


def _profile_payload(prof) -> dict:
    return {"d": prof.d, "knots": prof.knots.tolist(), "f": prof.f_values.tolist()}


def _cmd_profile(args) -> int:
    body = _load_body(args.body)
    u = _parse_direction(args.direction, body.dim)
    config = {
        "subcommand": "profile",
        "body": args.body,
        "direction": args.direction,
        "op": args.op,
        "knots": args.knots,
    }
    prof = profile_from_body(body, u, args.knots)
    if args.op == "extract":
        payload = {"profile": _profile_payload(prof), "config": config}
        _emit(payload, args, [json.dumps(_profile_payload(prof))])
        return 0
    if args.op == "I":
        value = functional_I(prof)
        payload = {"value": value, "config": config}
        _emit(payload, args, [f"I(h) = {_g(value)}"])
        return 0
    rearranged = rearrange(prof)
    payload = {"profile": _profile_payload(rearranged), "config": config}
    _emit(payload, args, [json.dumps(_profile_payload(rearranged))])
    return 0


def _affine_sup_deviation(prof) -> float:
    t, f = prof.knots, prof.f_values
    A = np.stack([np.ones_like(t), t], axis=1)
    coef, *_ = np.linalg.lstsq(A, f, rcond=None)
    return float(np.abs(f - A @ coef).max())


def _cmd_optimize(args) -> int:
    config = {
        "subcommand": "optimize-I",
        "d": args.d,
        "mode": args.mode,
        "knots": args.knots,
        "iters": args.iters,
        "seed": args.seed,
    }
    if args.mode == "max":
        prof, value = maximize_I(args.d, args.knots, args.iters, args.seed)
        target = 1.0 / 3.0
        extra = {"sup_affine_deviation": _affine_sup_deviation(prof)}
    else:
        prof, value = minimize_I(args.d, args.knots, args.iters, args.seed)
        target = lower_bound(args.d)
        extra = {"l1_distance_to_h0": profile_l1_distance(prof, h0(args.d))}
    payload = {
        "value": value,
        "target": target,
        **extra,
        "profile": _profile_payload(prof),
        "config": config,
    }
    lines = [f"I = {_g(value)}   target = {_g(target)}"]
    for k, v in extra.items():
        lines.append(f"{k} = {_g(v)}")
    _emit(payload, args, lines)
    return 0


# -- verification suites ---------------------------------------------------------------


def _row(suite, d, delta, quantity, estimate, std_error, target, ok) -> dict:
    return {
        "suite": suite,
        "d": d,
        "delta": delta,
        "quantity": quantity,
        "estimate": estimate,
        "std_error": std_error,
        "target": target,
        "pass": bool(ok),
    }


def _suite_bounds(dims) -> list[dict]:
    rows = []
    for d in dims:
        bc = bound_constants(d)
        rows.append(_row("bounds", d, "", "lower_bound", bc.lower, 0.0, 1.0 / 3.0, 0 < bc.lower < 1 / 3))
        rows.append(
            _row(
                "bounds",
                d,
                "",
                "lower_decreasing",
                bc.lower,
                0.0,
                lower_bound(d - 1) if d > 2 else lower_bound(2),
                bc.lower < lower_bound(d - 1) if d > 2 else abs(bc.lower - 7 / 30) < 1e-15,
            )
        )
        better_new = bc.diam_upper_new < bc.diam_upper_bp09
        rows.append(
            _row(
                "bounds",
                d,
                "",
                "diam_crossover",
                bc.diam_upper_new,
                0.0,
                bc.diam_upper_bp09,
                better_new if d <= 4 else not better_new,
            )
        )
    bc400 = bound_constants(400)
    rows.append(
        _row(
            "bounds",
            400,
            "",
            "bp09_asymptotic",
            bc400.diam_upper_bp09,
            0.0,
            1.0 - 5.0 / (8 * 400),
            abs(bc400.diam_upper_bp09 / (1.0 - 5.0 / (8 * 400)) - 1.0) < 0.01,
        )
    )
    rows.append(
        _row(
            "bounds",
            400,
            "",
            "new_asymptotic",
            bc400.diam_upper_new,
            0.0,
            sqrt(pi * 400 / 18.0),
            abs(bc400.diam_upper_new / sqrt(pi * 400 / 18.0) - 1.0) < 0.01,
        )
    )
    return rows


def _suite_profiles(dims, seed: int) -> list[dict]:
    rows = []
    for d in dims:
        target = lower_bound(d)
        val = functional_I(h0(d))
        rows.append(_row("profiles", d, "", "I_h0", val, 0.0, target, abs(val - target) <= 1e-7))
        vu = functional_I(uniform_profile(d))
        rows.append(_row("profiles", d, "", "I_uniform", vu, 0.0, 1 / 3, abs(vu - 1 / 3) <= 1e-9))
        rng = RngStream(seed, d)
        worst = 0.0
        for _ in range(30):
            prof = random_profile(d, rng, even=True)
            worst = max(worst, abs(functional_I(prof) - functional_I_via_H(prof)))
        rows.append(_row("profiles", d, "", "I_vs_via_H_max_gap", worst, 0.0, 0.0, worst <= 1e-7))
        worst_riesz = 0.0
        for _ in range(30):
            prof = random_profile(d, rng)
            worst_riesz = max(worst_riesz, functional_I(rearrange(prof)) - functional_I(prof))
        rows.append(
            _row("profiles", d, "", "riesz_max_violation", worst_riesz, 0.0, 0.0, worst_riesz <= 1e-8)
        )
        grid = np.logspace(-3, 3, 25)
        vals = [affine_I(AffineProfileParams.from_p(d, p)) for p in grid]
        rows.append(
            _row(
                "profiles",
                d,
                "",
                "affine_below_third",
                max(vals),
                0.0,
                1 / 3,
                max(vals) < 1 / 3,
            )
        )
    return rows


def _suite_extremal(dims, deltas, samples, seed, threads) -> list[dict]:
    rows = []
    for d in dims:
        rep = verify_limits(d, deltas, n_samples=samples, seed=seed, threads=threads)
        rows.extend(rep.csv_rows())
    return rows


def _cmd_verify(args) -> int:
    dims = [int(x) for x in args.d.split(",")]
    deltas = [float(x) for x in args.deltas.split(",")]
    threads = _resolved_threads(args)
    if args.suite == "bounds":
        rows = _suite_bounds(dims)
    elif args.suite == "profiles":
        rows = _suite_profiles(dims, args.seed)
    else:
        rows = _suite_extremal(dims, deltas, args.samples, args.seed, threads)
    ok = all(r["pass"] for r in rows)
    if args.report:
        with open(args.report, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["suite", "d", "delta", "quantity", "estimate", "std_error", "target", "pass"]
            )
            writer.writeheader()
            writer.writerows(rows)
    for r in rows:
        status = "pass" if r["pass"] else "FAIL"
        est = _g(r["estimate"]) if isinstance(r["estimate"], float) else r["estimate"]
        tgt = _g(r["target"]) if isinstance(r["target"], float) else r["target"]
        print(f"[{status}] {r['suite']} d={r['d']} delta={r['delta']} {r['quantity']}: "
              f"estimate={est} target={tgt}")
    print(f"verify: {'all checks passed' if ok else 'FAILURES detected'}")
    return 0 if ok else 1


# -- entry point --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="meandist",
        description="Mean distance of random points in convex bodies: estimators and verification.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add_common(sp, body=True):
        if body:
            sp.add_argument("--body", required=True, help="path to a body spec JSON file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=0, help="0 = all cores; MEANDIST_THREADS overrides")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("delta", help="mean distance of two uniform points")
    add_common(sp)
    sp.add_argument("--method", choices=["mc", "chord", "exact"], default="mc")
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--offsets", type=int, default=32, help="offsets per direction (chord method)")
    sp.set_defaults(func=_cmd_delta)

    sp = sub.add_parser("v1", help="first intrinsic volume")
    add_common(sp)
    sp.add_argument("--dirs", type=int, default=10_000)
    sp.add_argument("--grid", action="store_true", help="force the planar angle grid")
    sp.add_argument("--mc-dirs", dest="mc_dirs", action="store_true", help="force MC directions")
    sp.set_defaults(func=_cmd_v1)

    sp = sub.add_parser("ratio", help="Delta(K) / V1(K) with propagated error")
    add_common(sp)
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--dirs", type=int, default=10_000)
    sp.add_argument("--grid", action="store_true")
    sp.add_argument("--mc-dirs", dest="mc_dirs", action="store_true")
    sp.set_defaults(func=_cmd_ratio)

    sp = sub.add_parser("sylvester", help="four-point probability p(4,K), planar bodies")
    add_common(sp)
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.set_defaults(func=_cmd_sylvester)

    sp = sub.add_parser("profile", help="cross-section profile operations")
    add_common(sp)
    sp.add_argument("--direction", required=True, help="comma-separated direction, e.g. '1,0'")
    sp.add_argument("--op", choices=["extract", "I", "rearrange"], default="extract")
    sp.add_argument("--knots", type=int, default=201)
    sp.set_defaults(func=_cmd_profile)

    sp = sub.add_parser("optimize-I", help="extremize the profile functional")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--mode", choices=["max", "min"], required=True)
    sp.add_argument("--knots", type=int, default=9)
    sp.add_argument("--iters", type=int, default=5000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_optimize)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=["bounds", "extremal", "profiles"], required=True)
    sp.add_argument("--d", default="2,3")
    sp.add_argument("--deltas", default="0.1,0.03,0.01,0.003,0.001")
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=0)
    sp.add_argument("--report", default="", help="write the CSV report to this path")
    sp.set_defaults(func=_cmd_verify)
    return p


def main(argv=None) -> int:
    from .sampling import ThinBodyError

    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, ThinBodyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
