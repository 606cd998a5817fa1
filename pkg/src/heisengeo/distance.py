"""Exact sub-Riemannian distance via the closed squared-distance formula.

For p = (x, y, z) with r^2 = x^2 + y^2 > 0,

    d(0, p)^2 = r^2 / sinc^2(u),   u = the inverse of psi at z/r^2,

where psi(u) = (u/sin^2 u - cot u)/4 on (-pi, pi), rewritten in the stable
form (2u - sin 2u)/(8 sin^2 u).  On the z-axis the limiting value is
2 sqrt(pi |z|).  Distances between arbitrary points reduce to the origin
case by left translation.  Float-only: the formula is transcendental.
"""

from __future__ import annotations

import math

from . import series as _series
from .core import Point, inverse, mul

__all__ = ["psi", "psi_prime", "invert_psi", "distance_from_origin", "distance"]

#: below this |u| the rational-series evaluation replaces the closed form
#: (1 - cos 2u loses too many digits near 0)
SERIES_CUTOFF = 1e-2

_PSI_ORDER = 13
_psi_coeffs = None
_dpsi_coeffs = None


def _series_coeffs():
    # derived once from the exact series module, never hand-entered
    global _psi_coeffs, _dpsi_coeffs
    if _psi_coeffs is None:
        ps = _series.psi_series(_PSI_ORDER)
        _psi_coeffs = [float(c) for c in ps.coeffs]
        _dpsi_coeffs = [float(c) for c in ps.differentiate().coeffs]
    return _psi_coeffs, _dpsi_coeffs


def _horner(coeffs, u):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


def psi(u: float) -> float:
    """The monotone map (2u - sin 2u)/(8 sin^2 u) on (-pi, pi), psi(0) = 0."""
    if not abs(u) < math.pi:
        raise ValueError(f"psi is only evaluated on (-pi, pi), got {u}")
    if abs(u) < SERIES_CUTOFF:
        return _horner(_series_coeffs()[0], u)
    s = math.sin(u)
    return (2 * u - math.sin(2 * u)) / (8 * s * s)


def psi_prime(u: float) -> float:
    """Derivative of psi: (sin u - u cos u)/(2 sin^3 u)."""
    if not abs(u) < math.pi:
        raise ValueError(f"psi' is only evaluated on (-pi, pi), got {u}")
    if abs(u) < SERIES_CUTOFF:
        return _horner(_series_coeffs()[1], u)
    s = math.sin(u)
    return (s - u * math.cos(u)) / (2 * s * s * s)


def invert_psi(v: float, tol: float = 1e-13, max_iter: int = 200) -> float:
    """Solve psi(u) = v for u in (-pi, pi).

    Bracketed Newton: the bracket starts as the full interval (psi is
    strictly increasing and spans all of R), the initial guess comes from the
    small-argument series (u ~ 6v) or, for large |v|, from the tail
    asymptotics sin^2(pi - u) ~ pi/(4 v).  Newton steps that leave the
    bracket fall back to bisection.  Convergence is declared when
    |psi(u) - v| <= tol * max(1, |v|); exceeding `max_iter` raises.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if v == 0:
        return 0.0
    sign = 1.0 if v > 0 else -1.0
    w = abs(v)

    if w >= 1e12:
        # deep in the tail the asymptotic inverse is already beyond machine
        # precision (next correction is pi/12 relative to w)
        return sign * (math.pi - math.sqrt(math.pi / (4 * w)))

    if w < 0.1:
        guess = 6 * w
    else:
        delta = math.sqrt(math.pi / (4 * w))
        guess = math.pi - delta if delta < math.pi / 2 else 1.5
    lo, hi = 0.0, math.pi * (1 - 1e-16)
    u = min(max(guess, lo + 1e-18), hi)

    target = tol * max(1.0, w)
    for _ in range(max_iter):
        f = psi(u) - w
        if abs(f) <= target:
            return sign * u
        if f > 0:
            hi = u
        else:
            lo = u
        # near pi the float spacing of u itself bounds the achievable
        # residual; a machine-width bracket means u is as good as it gets
        if hi - lo <= 8 * 2.3e-16 * hi:
            return sign * u
        step = f / psi_prime(u)
        un = u - step
        if not (lo < un < hi):
            un = 0.5 * (lo + hi)
        u = un
    raise RuntimeError(
        f"psi inversion did not converge for v={v}: residual {psi(u) - w:.3e} after {max_iter} iterations"
    )


def _sinc(u: float) -> float:
    if abs(u) < 1e-8:
        return 1.0 - u * u / 6
    return math.sin(u) / u


def distance_from_origin(p: Point) -> float:
    """Sub-Riemannian distance from the origin; total on all of the group."""
    r2 = p.x * p.x + p.y * p.y
    if r2 == 0:
        if p.z == 0:
            return 0.0
        # z-axis limit of the closed formula, matching the geodesic that
        # closes a full projected circle
        return 2 * math.sqrt(math.pi * abs(p.z))
    u = invert_psi(p.z / r2)
    return math.sqrt(r2) / _sinc(u)


def distance(p: Point, q: Point) -> float:
    """Left-invariant distance: origin distance of p^{-1} * q."""
    return distance_from_origin(mul(inverse(p), q))
