"""Unit-speed horizontal curves driven by a polynomial heading profile.

A profile stores the heading polynomial theta(t) = sum(theta_i t^i); the
associated curve solves

    x' = cos(theta),  y' = sin(theta),  z' = (x y' - y x')/2

from its start point.  The heading-rate theta' is the curve's characteristic
deviation (equal to the Euclidean curvature of the planar projection), and
theta'' is its geodesic curvature.

Integration uses fixed-step classical RK4 (local truncation order 5) through
the kernels in `_kernels`, with a Richardson step-halving error estimate
available via `integrate_with_error`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from . import _kernels
from .core import Point

__all__ = [
    "ThetaProfile",
    "Trajectory",
    "PlanarCurve",
    "integrate_curve",
    "integrate_with_error",
    "characteristic_deviation",
    "geodesic_curvature",
    "project",
    "area_identity_residual",
    "planar_curvature",
    "dilate_curve",
]


@dataclass(frozen=True)
class ThetaProfile:
    """Polynomial heading theta(t) = sum(coeffs[i] t^i) on (-T, T).

    Coefficients may be floats or exact `Fraction`s; evaluation at a Fraction
    argument stays exact when the coefficients are exact.
    """

    coeffs: tuple
    domain_halfwidth: float = math.inf

    def __init__(self, coeffs: Sequence, domain_halfwidth: float = math.inf):
        if len(coeffs) == 0:
            raise ValueError("a heading profile needs at least a constant term")
        if not domain_halfwidth > 0:
            raise ValueError("domain halfwidth must be positive")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "domain_halfwidth", domain_halfwidth)

    @classmethod
    def from_jet(cls, jet: Sequence, domain_halfwidth: float = math.inf) -> "ThetaProfile":
        """Build from derivative values (theta(0), theta'(0), theta''(0), ...)."""
        fact = 1
        coeffs = []
        for i, d in enumerate(jet):
            if i > 1:
                fact *= i
            coeffs.append(Fraction(d) / fact if isinstance(d, (int, Fraction)) else d / fact)
        return cls(coeffs, domain_halfwidth)

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=np.float64)

    def _check_domain(self, t):
        worst = np.max(np.abs(t)) if isinstance(t, np.ndarray) else abs(t)
        if worst >= self.domain_halfwidth:
            raise ValueError(
                f"t={t} outside the profile domain (-{self.domain_halfwidth}, {self.domain_halfwidth})"
            )

    def theta(self, t):
        self._check_domain(t)
        if isinstance(t, np.ndarray):
            return np.polynomial.polynomial.polyval(t, self.float_coeffs())
        acc = 0 * self.coeffs[-1]
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "ThetaProfile":
        d = [i * c for i, c in enumerate(self.coeffs)][1:]
        return ThetaProfile(d if d else [0 * self.coeffs[0]], self.domain_halfwidth)

    def deviation(self, t):
        """theta'(t), the turning rate of the heading."""
        return self.derivative().theta(t)

    def curvature(self, t):
        """theta''(t), the geodesic curvature."""
        return self.derivative().derivative().theta(t)


@dataclass(frozen=True)
class Trajectory:
    """Sampled curve: times, points (n, 3), headings, and integrator metadata."""

    times: np.ndarray
    points: np.ndarray
    thetas: np.ndarray
    step: float
    method: str = "rk4"

    def __len__(self):
        return len(self.times)

    def point(self, i: int) -> Point:
        return Point(*self.points[i])

    def start(self) -> Point:
        return self.point(0)


@dataclass(frozen=True)
class PlanarCurve:
    """Projection of a trajectory on the (x, y)-plane, same sampling."""

    times: np.ndarray
    xy: np.ndarray

    def __len__(self):
        return len(self.times)


def characteristic_deviation(profile: ThetaProfile, t):
    """theta'(t) = xdot yddot - ydot xddot along the profile's curve."""
    profile._check_domain(t)
    return profile.deviation(t)


def geodesic_curvature(profile: ThetaProfile, t):
    """theta''(t); vanishes identically exactly on geodesics."""
    profile._check_domain(t)
    return profile.curvature(t)


def integrate_curve(
    profile: ThetaProfile,
    t_end: float,
    step: float,
    start: Point = Point(0.0, 0.0, 0.0),
) -> Trajectory:
    """Integrate the horizontal system from `start` up to `t_end`.

    `step` is the target step; the actual uniform step is t_end/n with
    n = round(t_end/step), so the final sample lands exactly on t_end.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if t_end < 0 or t_end >= profile.domain_halfwidth:
        raise ValueError(f"t_end={t_end} outside [0, {profile.domain_halfwidth})")
    coeffs = profile.float_coeffs()
    if t_end == 0:
        th0 = float(profile.theta(0.0))
        return Trajectory(
            times=np.zeros(1),
            points=np.array([[float(start.x), float(start.y), float(start.z)]]),
            thetas=np.array([th0]),
            step=step,
            method="rk4",
        )
    n = max(1, round(t_end / step))
    h = t_end / n
    out = _kernels.rk4_curve(
        coeffs, float(start.x), float(start.y), float(start.z), 0.0, h, n
    )
    return Trajectory(
        times=h * np.arange(n + 1),
        points=out[:, :3],
        thetas=out[:, 3],
        step=h,
        method="rk4",
    )


def integrate_with_error(
    profile: ThetaProfile, t_end: float, step: float, start: Point = Point(0.0, 0.0, 0.0)
) -> Tuple[Trajectory, float]:
    """Trajectory plus a Richardson step-halving estimate of the endpoint error.

    For a 4th-order method the returned trajectory's endpoint error is about
    (16/15) of the coarse/fine endpoint difference.
    """
    traj = integrate_curve(profile, t_end, step, start)
    fine = integrate_curve(profile, t_end, traj.step / 2, start)
    diff = np.abs(fine.points[-1] - traj.points[-1]).max()
    return traj, diff * 2**4 / (2**4 - 1)


def project(traj: Trajectory) -> PlanarCurve:
    """Drop the vertical coordinate, keeping the sampling."""
    return PlanarCurve(times=traj.times, xy=traj.points[:, :2].copy())


def area_identity_residual(profile: ThetaProfile, t_end: float, step: float = 1e-3) -> float:
    """Max relative residual of x^2+y^2 = 4 * iint (1/2 - theta' z') on (0, t_end].

    The identity is only claimed for small windows when some heading jet is
    nonzero; this evaluates it by cumulative Simpson quadrature on the chosen
    window and reports the worst relative mismatch instead of guessing a
    validity radius.  Times below t_end/10 are skipped (both sides vanish
    quadratically there, so the ratio is pure noise).
    """
    from scipy.integrate import cumulative_simpson

    traj = integrate_curve(profile, t_end, step)
    ts = traj.times
    xs, ys = traj.points[:, 0], traj.points[:, 1]
    theta_dot = profile.derivative().theta(ts)
    zdot = (xs * np.sin(traj.thetas) - ys * np.cos(traj.thetas)) / 2
    inner = cumulative_simpson(0.5 - theta_dot * zdot, x=ts, initial=0.0)
    outer = cumulative_simpson(inner, x=ts, initial=0.0)
    lhs = xs**2 + ys**2
    sel = ts > t_end / 10
    return float(np.max(np.abs(lhs[sel] - 4 * outer[sel]) / np.abs(lhs[sel])))


# One-sided 6-point stencils, exact through degree 5.  4-point endpoint
# stencils cannot reach 1e-6 accuracy for degree-4 heading profiles: their
# truncation/roundoff tradeoff bottoms out right at 1e-6 in float64.
_ONESIDED_D1 = np.array([-137 / 60, 5.0, -5.0, 10 / 3, -5 / 4, 1 / 5])
_ONESIDED_D2 = np.array([15 / 4, -77 / 6, 107 / 6, -13.0, 61 / 12, -5 / 6])


def _stencil_derivs(vals: np.ndarray, i: int, h: float):
    """First and second derivative at sample i: centered 5-point stencils
    inside, one-sided 6-point stencils at the ends."""
    n = len(vals)
    if 2 <= i <= n - 3:
        v = vals[i - 2 : i + 3]
        d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h)
        d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h)
    elif i < 2:
        v = vals[i : i + 6]
        d1 = float(_ONESIDED_D1 @ v) / h
        d2 = float(_ONESIDED_D2 @ v) / (h * h)
    else:
        v = vals[i - 5 : i + 1][::-1]
        d1 = -float(_ONESIDED_D1 @ v) / h
        d2 = float(_ONESIDED_D2 @ v) / (h * h)
    return d1, d2


def planar_curvature(pc: PlanarCurve, t: float) -> float:
    """Signed Euclidean curvature (x'y'' - y'x'')/(x'^2+y'^2)^(3/2) at time t.

    Finite differences on the curve samples; positive means counterclockwise
    turning.  t snaps to the nearest sample.
    """
    if len(pc) < 6:
        raise ValueError("need at least 6 samples for curvature stencils")
    t0, t1 = pc.times[0], pc.times[-1]
    if t < t0 - 1e-12 or t > t1 + 1e-12:
        raise ValueError(f"t={t} outside the sampled range [{t0}, {t1}]")
    h = pc.times[1] - pc.times[0]
    i = int(round((t - t0) / h))
    i = min(max(i, 0), len(pc) - 1)
    dx, ddx = _stencil_derivs(pc.xy[:, 0], i, h)
    dy, ddy = _stencil_derivs(pc.xy[:, 1], i, h)
    return (dx * ddy - dy * ddx) / (dx * dx + dy * dy) ** 1.5


def dilate_curve(traj: Trajectory, profile: ThetaProfile, r) -> Tuple[Trajectory, ThetaProfile]:
    """Dilated curve xi_r(t) = delta_r(zeta(t/r)) and its reparametrized profile.

    The new profile is theta_r(t) = theta(t/r), i.e. coefficients theta_i/r^i,
    so the curvature law k_xi(r t) = k_zeta(t)/r^2 holds exactly on
    coefficients (exactly in the rational sense when both are exact).
    """
    if r <= 0:
        raise ValueError(f"dilation coefficient must be positive, got {r}")
    new_coeffs = []
    rpow = r**0
    for i, c in enumerate(profile.coeffs):
        if i > 0:
            rpow = rpow * r
        new_coeffs.append(c / rpow)
    T = profile.domain_halfwidth
    new_profile = ThetaProfile(new_coeffs, T * float(r) if math.isfinite(T) else math.inf)

    pts = traj.points.copy()
    rf = float(r)
    pts[:, 0] *= rf
    pts[:, 1] *= rf
    pts[:, 2] *= rf * rf
    new_traj = Trajectory(
        times=traj.times * rf,
        points=pts,
        thetas=traj.thetas.copy(),
        step=traj.step * rf,
        method=traj.method,
    )
    return new_traj, new_profile
