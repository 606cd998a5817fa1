"""Command-line interface: reproducible experiments with CSV/JSON output.

Exit status: 0 if every assertion of the requested experiment passed,
1 if any failed (the JSON report names the failure), 2 on configuration
errors.  Numeric parameters accept decimals on numeric paths; exact-mode
commands accept integers and 'p/q' fractions.  CSV output uses 17
significant digits, a header row, and LF line endings.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import series as series_mod
from .analysis import fit_taylor, match_euler_spiral, reconstruct_isometry
from .connections import EpsMetric, eps_expansion_check, eps_flow_path
from ._kernels import hamiltonian_energy
from .core import ORIGIN, Point
from .curves import ThetaProfile, integrate_curve, project
from .distance import distance, distance_from_origin
from .geodesics import GeodesicParams, geodesic_point


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_exact(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact number: {text!r}") from exc


def _parse_jet(text: str, exact: bool):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty coefficient list")
    if exact:
        return [_parse_exact(p) for p in parts]
    return [float(p) for p in parts]


def _parse_point(text: str) -> Point:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"a point needs 3 coordinates: {text!r}")
    return Point(*parts)


def _parse_window(text: str):
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2 or not 0 < parts[0] < parts[1]:
        raise argparse.ArgumentTypeError(f"window must be 'lo,hi' with 0 < lo < hi: {text!r}")
    return parts[0], parts[1]


def _write_text(path, text: str):
    if path:
        with open(path, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def _report(command, parameters, results, assertions):
    return {
        "command": command,
        "parameters": parameters,
        "results": results,
        "assertions": assertions,
    }


def _emit(report, out_path) -> int:
    _write_text(out_path, json.dumps(report, indent=2) + "\n")
    return 0 if all(a["pass"] for a in report["assertions"]) else 1


def _assertion(name, ok, detail=""):
    return {"name": name, "pass": bool(ok), "detail": detail}


# ------------------------------------------------------------------ commands


def _cmd_distance(args) -> int:
    p = args.point
    if args.point2 is not None:
        d = distance(p, args.point2)
    else:
        d = distance_from_origin(p)
    params = {"point": list(p)}
    if args.point2 is not None:
        params["point2"] = list(args.point2)
    return _emit(_report("distance", params, {"distance": d}, []), args.out)


def _cmd_geodesic(args) -> int:
    g = GeodesicParams(args.omega, args.theta0)
    n = max(1, round(args.t_end / args.step)) if args.t_end > 0 else 0
    ts = [i * args.t_end / n for i in range(n + 1)] if n else [0.0]
    rows = []
    for t in ts:
        pt = geodesic_point(g, t)
        rows.append((t, pt.x, pt.y, pt.z, args.theta0 + args.omega * t))
    if args.format == "csv":
        _write_csv(args.out, ["t", "x", "y", "z", "theta"], rows)
        return 0
    end = rows[-1]
    report = _report(
        "geodesic",
        {"omega": args.omega, "theta0": args.theta0, "t_end": args.t_end, "step": args.step},
        {"endpoint": {"x": end[1], "y": end[2], "z": end[3]}},
        [],
    )
    return _emit(report, args.out)


def _cmd_integrate(args) -> int:
    profile = ThetaProfile(_parse_jet(args.jet, exact=False))
    start = args.start if args.start is not None else ORIGIN
    traj = integrate_curve(profile, args.t_end, args.step, start=start)
    rows = [
        (traj.times[i], traj.points[i, 0], traj.points[i, 1], traj.points[i, 2], traj.thetas[i])
        for i in range(len(traj))
    ]
    if args.format == "json":
        report = _report(
            "integrate",
            {"jet": args.jet, "t_end": args.t_end, "step": args.step},
            {"samples": [list(r) for r in rows]},
            [],
        )
        return _emit(report, args.out)
    _write_csv(args.out, ["t", "x", "y", "z", "theta"], rows)
    return 0


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _cmd_verify_theorem(args) -> int:
    if args.mode == "exact":
        coeffs = _parse_jet(args.jet, exact=True)
        d2 = series_mod.distance_sq_series(coeffs, 8)
        profile = ThetaProfile(coeffs)
        k0 = profile.curvature(Fraction(0))
        expected = -(k0**2) / 720
        assertions = [
            _assertion("t2_coefficient_is_1", d2[2] == 1, _frac_str(d2[2])),
            _assertion(
                "t3_t4_t5_vanish",
                d2[3] == 0 and d2[4] == 0 and d2[5] == 0,
                ", ".join(_frac_str(d2[i]) for i in (3, 4, 5)),
            ),
            _assertion(
                "t6_equals_minus_k0_sq_over_720",
                d2[6] == expected,
                f"got {_frac_str(d2[6])}, expected {_frac_str(expected)}",
            ),
        ]
        results = {
            "t6_coefficient": _frac_str(d2[6]),
            "expected": _frac_str(expected),
            "coefficients": d2.as_fraction_strings(),
        }
        if args.random_jets:
            rng = np.random.default_rng(args.seed)
            all_ok = True
            details = []
            for _ in range(args.random_jets):
                jet = [
                    Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
                    for _ in range(4)
                ]
                rand_profile = ThetaProfile.from_jet([Fraction(0)] + jet)
                rd2 = series_mod.distance_sq_series(rand_profile.coeffs, 8)
                want = -(jet[1] ** 2) / 720
                ok = (
                    rd2[2] == 1
                    and rd2[3] == 0
                    and rd2[4] == 0
                    and rd2[5] == 0
                    and rd2[6] == want
                )
                all_ok &= ok
                details.append(_frac_str(rd2[6]))
            assertions.append(
                _assertion(
                    f"random_jets_t6_is_minus_b_sq_over_720_x{args.random_jets}",
                    all_ok,
                    ";".join(details),
                )
            )
        params = {"mode": "exact", "jet": args.jet, "seed": args.seed}
        return _emit(_report("verify-theorem", params, results, assertions), args.out)

    # numeric mode: integrate, evaluate the exact distance, fit the t^6 term
    coeffs = _parse_jet(args.jet, exact=False)
    profile = ThetaProfile(coeffs)
    k0 = float(profile.curvature(0.0))
    lo, hi = args.window if args.window else (0.05, 0.5)
    ts = np.geomspace(lo, hi, args.samples)
    traj = integrate_curve(profile, hi, args.step)
    samples = []
    for t in ts:
        i = int(round(t / traj.step))
        tt = traj.times[i]
        d = distance_from_origin(traj.point(i))
        samples.append((tt, d * d))
    report_fit = fit_taylor(samples, fixed_part=[0.0, 0.0, 1.0], powers=[6, 7, 8])
    c6 = report_fit.coefficients[6].estimate
    expected = -(k0**2) / 720
    if expected != 0:
        ok = abs(c6 - expected) <= 0.02 * abs(expected)
        detail = f"c6={c6:.8e}, expected={expected:.8e}, rel_err={abs(c6 - expected) / abs(expected):.2%}"
    else:
        ok = abs(c6) <= 1e-6
        detail = f"c6={c6:.3e}, expected 0"
    params = {
        "mode": "numeric",
        "jet": args.jet,
        "window": [lo, hi],
        "step": args.step,
        "samples": args.samples,
    }
    results = {"t6_coefficient": c6, "expected": expected, "fit": report_fit.to_json_dict()}
    assertions = [_assertion("t6_within_2pct", ok, detail)]
    return _emit(_report("verify-theorem", params, results, assertions), args.out)


def _cmd_verify_riemannian(args) -> int:
    coeffs = _parse_jet(args.jet, exact=False)
    profile = ThetaProfile(coeffs)
    met = EpsMetric(args.eps)
    h0 = float(profile.deviation(0.0))
    t_samples = np.geomspace(*args.window, args.samples) if args.window else None
    fit = eps_expansion_check(profile, met, t_samples=t_samples, step=args.step)
    c4 = fit.coefficients[4].estimate
    expected = -h0 * h0 / 12

    path = eps_flow_path(met, ORIGIN, (0.8, -0.4, 1.7), 1.0, 1e-3)
    energies = [hamiltonian_energy(args.eps, s) for s in path]
    drift = max(abs(e - energies[0]) for e in energies)

    if expected != 0:
        ok = abs(c4 - expected) <= 0.05 * abs(expected)
        detail = f"c4={c4:.8e}, expected={expected:.8e}, rel_err={abs(c4 - expected) / abs(expected):.2%}"
    else:
        ok = abs(c4) <= 1e-3
        detail = f"c4={c4:.3e}, expected 0"
    assertions = [
        _assertion("quartic_coefficient_within_5pct", ok, detail),
        _assertion("energy_drift_below_1e-10", drift <= 1e-10, f"drift={drift:.3e}"),
    ]
    params = {
        "jet": args.jet,
        "eps": args.eps,
        "window": list(args.window) if args.window else list(fit.window),
        "step": args.step,
        "samples": args.samples,
    }
    results = {
        "quartic_coefficient": c4,
        "expected": expected,
        "energy_drift": drift,
        "fit": fit.to_json_dict(),
    }
    return _emit(_report("verify-riemannian", params, results, assertions), args.out)


def _cmd_spiral(args) -> int:
    coeffs = _parse_jet(args.jet, exact=False)
    profile = ThetaProfile(coeffs)
    k = float(profile.curvature(0.0))
    traj = integrate_curve(profile, args.t_end, args.step)
    match = match_euler_spiral(project(traj), k_const=k)
    ok = match.residual <= args.tol
    params = {"jet": args.jet, "t_end": args.t_end, "step": args.step, "tol": args.tol}
    results = {
        "a": match.a,
        "b": match.b,
        "c": match.c,
        "reflect": match.reflect,
        "residual": match.residual,
    }
    assertions = [
        _assertion("spiral_residual_below_tol", ok, f"residual={match.residual:.3e}")
    ]
    return _emit(_report("spiral", params, results, assertions), args.out)


def _cmd_isometry(args) -> int:
    coeffs = _parse_jet(args.jet, exact=False)
    rng = np.random.default_rng(args.seed)
    tail = coeffs[1:]
    th1, th2 = rng.uniform(-math.pi, math.pi, 2)
    s1 = Point(*rng.uniform(-1, 1, 3))
    s2 = Point(*rng.uniform(-1, 1, 3))
    z1 = integrate_curve(ThetaProfile([th1] + tail), args.t_end, args.step, start=s1)
    z2 = integrate_curve(ThetaProfile([th2] + tail), args.t_end, args.step, start=s2)
    iota, residual = reconstruct_isometry(z1, z2)
    ok = residual <= args.tol
    params = {
        "jet": args.jet,
        "seed": args.seed,
        "t_end": args.t_end,
        "step": args.step,
        "tol": args.tol,
    }
    results = {
        "angle": iota.angle,
        "translation": list(iota.translation),
        "residual": residual,
    }
    assertions = [
        _assertion("reconstruction_residual_below_tol", ok, f"residual={residual:.3e}")
    ]
    return _emit(_report("isometry", params, results, assertions), args.out)


def _cmd_series_dump(args) -> int:
    n = args.order
    what = args.what
    if what in ("z", "xy-sq", "distance-sq"):
        if not args.jet:
            raise ValueError("series-dump: --jet is required for curve series")
        coeffs = _parse_jet(args.jet, exact=True)
        ps = {
            "z": lambda: series_mod.z_series(coeffs, n),
            "xy-sq": lambda: series_mod.xy_sq_series(coeffs, n),
            "distance-sq": lambda: series_mod.distance_sq_series(coeffs, n),
        }[what]()
    else:
        ps = {
            "psi": series_mod.psi_series,
            "phi": series_mod.phi_series,
            "sinc": series_mod.sinc_series,
            "inv-sinc2-phi": series_mod.inv_sinc2_phi_series,
        }[what](n)
    _write_text(args.out, json.dumps(ps.as_fraction_strings()) + "\n")
    return 0


# ---------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heisengeo",
        description="Heisenberg-group sub-Riemannian geometry experiments",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="sub-Riemannian distance between points")
    p.add_argument("--point", type=_parse_point, required=True)
    p.add_argument("--point2", type=_parse_point, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("geodesic", help="sample a closed-form geodesic")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--t-end", dest="t_end", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-2)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_geodesic)

    p = sub.add_parser("integrate", help="integrate a heading profile")
    p.add_argument("--jet", required=True, help="theta polynomial coefficients c0,c1,...")
    p.add_argument("--t-end", dest="t_end", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--start", type=_parse_point, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_integrate)

    p = sub.add_parser("verify-theorem", help="squared-distance t^6 coefficient check")
    p.add_argument("--mode", choices=("exact", "numeric"), required=True)
    p.add_argument("--jet", required=True)
    p.add_argument("--window", type=_parse_window, default=None)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--random-jets", dest="random_jets", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser(
        "verify-riemannian", help="quartic coefficient of the metric-family distance"
    )
    p.add_argument("--jet", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--window", type=_parse_window, default=None)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--samples", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify_riemannian)

    p = sub.add_parser("spiral", help="match a constant-curvature projection to a Fresnel spiral")
    p.add_argument("--jet", required=True)
    p.add_argument("--t-end", dest="t_end", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_spiral)

    p = sub.add_parser("isometry", help="synthesize and reconstruct a curve isometry")
    p.add_argument("--jet", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-end", dest="t_end", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_isometry)

    p = sub.add_parser("series-dump", help="exact series coefficients as fractions")
    p.add_argument(
        "--what",
        choices=("psi", "phi", "sinc", "inv-sinc2-phi", "z", "xy-sq", "distance-sq"),
        required=True,
    )
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--jet", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_series_dump)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, argparse.ArgumentTypeError) as exc:
        print(f"heisengeo: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
