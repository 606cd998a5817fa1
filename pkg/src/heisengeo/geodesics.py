"""Closed-form arc-length geodesics and their first-return minimality window.

From the origin, an arc-length geodesic is determined by the turning rate
omega of its planar projection and the initial heading theta0:

    x(t) = (sin(omega t + theta0) - sin(theta0)) / omega
    y(t) = (cos(theta0) - cos(omega t + theta0)) / omega
    z(t) = (omega t - sin(omega t)) / (2 omega^2)

degenerating to a straight horizontal line for omega = 0.  General geodesics
are left translations of these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ORIGIN, Point, mul

__all__ = ["GeodesicParams", "geodesic_point", "minimality_horizon"]

# Below this value of |omega * t| the closed form suffers catastrophic
# cancellation in (omega t - sin(omega t))/omega^2, so a 4-term Taylor form
# (machine-exact there) is used instead.
SMALL_ANGLE = 1e-2


@dataclass(frozen=True)
class GeodesicParams:
    """Projection turning rate, initial heading, and start point."""

    omega: float
    theta0: float = 0.0
    base: Point = ORIGIN


def _from_origin(omega: float, theta0: float, t: float) -> Point:
    a = omega * t
    ct0, st0 = math.cos(theta0), math.sin(theta0)
    if abs(a) < SMALL_ANGLE:
        a2 = a * a
        # sin(a)/a, (cos(a)-1)/a, (a-sin(a))/(2a^2): Taylor through a^6/a^5
        f1 = 1.0 - a2 / 6 * (1.0 - a2 / 20 * (1.0 - a2 / 42))
        f2 = -a / 2 * (1.0 - a2 / 12 * (1.0 - a2 / 30))
        f3 = a / 12 * (1.0 - a2 / 20 * (1.0 - a2 / 42))
        return Point(
            t * (ct0 * f1 + st0 * f2),
            t * (st0 * f1 - ct0 * f2),
            t * t * f3,
        )
    return Point(
        (math.sin(a + theta0) - st0) / omega,
        (ct0 - math.cos(a + theta0)) / omega,
        (a - math.sin(a)) / (2 * omega * omega),
    )


def geodesic_point(g: GeodesicParams, t: float) -> Point:
    """Point at arc length t of the geodesic, start translated to g.base."""
    p = _from_origin(g.omega, g.theta0, t)
    if g.base == ORIGIN:
        return p
    return mul(g.base, p)


def minimality_horizon(g: GeodesicParams) -> float:
    """Arc length up to which the geodesic is minimizing: 2 pi / |omega|.

    Straight lines (omega = 0) minimize forever.  Within the horizon the
    distance from the start equals the arc length; the projection closes a
    full circle exactly at the horizon.
    """
    if g.omega == 0:
        return math.inf
    return 2 * math.pi / abs(g.omega)
