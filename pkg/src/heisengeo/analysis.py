"""Numerical verification engines: coefficient fits, curve matching, spirals.

* `fit_taylor` turns sampled values of a smooth function into least-squares
  estimates of selected Taylor coefficients (with nuisance powers absorbing
  the remainder), which is how the O(t^k) statements become testable numbers.
* `reconstruct_isometry` recovers the rotation + left-translation matching
  two unit-speed curves with the same heading-rate profile, using only their
  t = 0 data; the rest of the samples only score the residual.
* `fresnel` / `match_euler_spiral` verify that constant-curvature curves
  project onto rotated/reflected/dilated Fresnel spirals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.integrate import quad

from .core import Isometry, Point, apply_isometry, inverse, mul, rotate
from .curves import PlanarCurve, Trajectory

__all__ = [
    "CoefficientEstimate",
    "FitReport",
    "SpiralMatch",
    "fit_taylor",
    "reconstruct_isometry",
    "fresnel",
    "match_euler_spiral",
]


class CoefficientEstimate(NamedTuple):
    estimate: float
    stderr: float


@dataclass(frozen=True)
class FitReport:
    """Least-squares Taylor-coefficient estimates over a sample window."""

    coefficients: dict
    window: tuple
    model_powers: list
    residual_norm: float

    def to_json_dict(self) -> dict:
        return {
            "coefficients": {
                str(p): {"estimate": c.estimate, "stderr": c.stderr}
                for p, c in self.coefficients.items()
            },
            "window": list(self.window),
            "model_powers": list(self.model_powers),
            "residual_norm": self.residual_norm,
        }


def fit_taylor(
    samples: Sequence[tuple], fixed_part: Sequence[float], powers: Sequence[int]
) -> FitReport:
    """Fit value - fixed_part(t) against sum(c_p t^p) by least squares.

    `fixed_part` is a polynomial given by coefficients (low to high) that is
    subtracted exactly rather than estimated.  Standard errors come from the
    normal equations; a rank-deficient design matrix raises ValueError.
    """
    ts = np.array([s[0] for s in samples], dtype=float)
    vals = np.array([s[1] for s in samples], dtype=float)
    powers = list(powers)
    if len(ts) < len(powers) + 2:
        raise ValueError(f"need at least {len(powers) + 2} samples for {len(powers)} powers")
    if len(set(ts)) != len(ts) or np.any(ts <= 0):
        raise ValueError("sample times must be distinct and positive")

    fixed = np.polynomial.polynomial.polyval(ts, np.asarray(fixed_part, dtype=float))
    rhs = vals - fixed
    X = np.column_stack([ts**p for p in powers])
    # column scaling keeps the high powers well-conditioned on small windows
    col = np.linalg.norm(X, axis=0)
    if np.any(col == 0):
        raise ValueError("degenerate design matrix column")
    Xs = X / col
    if np.linalg.matrix_rank(Xs) < len(powers):
        raise ValueError("rank-deficient design matrix; reduce powers or widen window")
    sol, _, _, _ = np.linalg.lstsq(Xs, rhs, rcond=None)
    coeffs = sol / col

    resid = rhs - X @ coeffs
    rss = float(resid @ resid)
    dof = len(ts) - len(powers)
    sigma2 = rss / dof if dof > 0 else 0.0
    cov = sigma2 * np.linalg.inv(Xs.T @ Xs)
    stderr = np.sqrt(np.diag(cov)) / col

    return FitReport(
        coefficients={
            p: CoefficientEstimate(float(c), float(se))
            for p, c, se in zip(powers, coeffs, stderr)
        },
        window=(float(ts.min()), float(ts.max())),
        model_powers=powers,
        residual_norm=math.sqrt(rss),
    )


# --------------------------------------------------------------- isometries


def reconstruct_isometry(zeta1: Trajectory, zeta2: Trajectory):
    """Match zeta2 = iota(zeta1) from the t = 0 data of both curves.

    Both trajectories must share the time grid and be unit speed.  The
    rotation angle comes from the initial headings (a z-rotation by beta
    shifts headings by -beta), the translation from the initial points.
    Returns (iota, residual) with residual the max pointwise Euclidean
    deviation over the whole grid; curves with different heading-rate
    profiles simply show up with a large residual.
    """
    if len(zeta1) != len(zeta2) or not np.allclose(zeta1.times, zeta2.times):
        raise ValueError("trajectories must share their time grid")
    beta = float(zeta1.thetas[0] - zeta2.thetas[0])
    p1, p2 = zeta1.point(0), zeta2.point(0)
    u = mul(p2, inverse(rotate(beta, p1)))
    iota = Isometry(u, beta)

    moved = np.empty_like(zeta1.points)
    for i in range(len(zeta1)):
        q = apply_isometry(iota, zeta1.point(i))
        moved[i] = (q.x, q.y, q.z)
    residual = float(np.abs(moved - zeta2.points).max())
    return iota, residual


# ------------------------------------------------------------------ fresnel


def fresnel(t: float) -> tuple:
    """(int_0^t cos(u^2) du, int_0^t sin(u^2) du) by adaptive quadrature."""
    c, _ = quad(lambda u: math.cos(u * u), 0.0, t, epsabs=1e-12, epsrel=1e-12, limit=200)
    s, _ = quad(lambda u: math.sin(u * u), 0.0, t, epsabs=1e-12, epsrel=1e-12, limit=200)
    return c, s


# ------------------------------------------------------------------- spirals


@dataclass(frozen=True)
class SpiralMatch:
    """Parameters mapping a Fresnel spiral onto a projected curve.

    The curve's heading satisfies theta(t) = +/-((a t + b)^2 + c); `reflect`
    records the minus branch.
    """

    a: float
    b: float
    c: float
    reflect: bool
    residual: float


def _heading_from_samples(pc: PlanarCurve):
    """Initial heading and turning rate by one-sided differences."""
    h = pc.times[1] - pc.times[0]
    v = pc.xy[:5]
    w = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12 * h)
    dx = float(w @ v[:, 0])
    dy = float(w @ v[:, 1])
    theta0 = math.atan2(dy, dx)
    # turning rate from the second derivatives
    w2 = np.array([35.0, -104.0, 114.0, -56.0, 11.0]) / (12 * h * h)
    ddx = float(w2 @ v[:, 0])
    ddy = float(w2 @ v[:, 1])
    return theta0, dx * ddy - dy * ddx


def match_euler_spiral(pc: PlanarCurve, k_const: float, subsample: int = 10) -> SpiralMatch:
    """Verify a constant-curvature projection against the Fresnel template.

    Given the (constant) geodesic curvature k of the generating curve, the
    heading is theta(t) = theta0 + h0 t + (k/2) t^2; completing the square
    gives the spiral parameters

        a = sqrt(|k|/2),  b = +/- h0/(2a),  c = +/-(theta0 - sign(k) b^2),

    and the projection must equal start + (1/a) diag(1, +/-1) R(c)
    (F(a t + b) - F(b)) with F the Fresnel pair.  The residual is the max
    Euclidean deviation over a subsample of the curve.
    """
    if k_const == 0:
        raise ValueError("constant curvature 0 projects to a circle or line, not a spiral")
    theta0, h0 = _heading_from_samples(pc)
    reflect = k_const < 0
    a = math.sqrt(abs(k_const) / 2)
    if reflect:
        b = -h0 / (2 * a)
        c = -theta0 - b * b
    else:
        b = h0 / (2 * a)
        c = theta0 - b * b

    cb, sb = fresnel(b)
    cc, sc = math.cos(c), math.sin(c)
    sign = -1.0 if reflect else 1.0
    start = pc.xy[0]

    idx = list(range(0, len(pc), max(1, subsample)))
    if idx[-1] != len(pc) - 1:
        idx.append(len(pc) - 1)
    worst = 0.0
    for i in idx:
        t = pc.times[i]
        cf, sf = fresnel(a * t + b)
        dc, ds = cf - cb, sf - sb
        # rotate by c, then reflect the second axis on the minus branch
        ex = (cc * dc - sc * ds) / a
        ey = sign * (sc * dc + cc * ds) / a
        worst = max(
            worst,
            math.hypot(start[0] + ex - pc.xy[i, 0], start[1] + ey - pc.xy[i, 1]),
        )
    return SpiralMatch(a=a, b=b, c=c, reflect=reflect, residual=worst)
