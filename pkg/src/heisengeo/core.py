"""Heisenberg group structure: points, frame vectors, and its isometries.

Points live in ambient coordinates (x, y, z).  Tangent vectors are stored as
coefficients (a, b, c) on the left-invariant frame

    X1 = d/dx - (y/2) d/dz,   X2 = d/dy + (x/2) d/dz,   X3 = d/dz,

which is the representation every formula in this package is written in.
A vector is horizontal when its X3 coefficient vanishes; the metric makes
(X1, X2) orthonormal on the horizontal distribution.

All operations are pure functions on immutable values.  Coordinates may be
floats or `fractions.Fraction`s; operations that need transcendental
functions (rotations) return floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Point",
    "TangentVec",
    "Isometry",
    "ORIGIN",
    "mul",
    "inverse",
    "rotate",
    "dilate",
    "dilate_tangent",
    "apply_isometry",
    "sr_norm",
    "frame_to_ambient",
    "ambient_to_frame",
]


@dataclass(frozen=True)
class Point:
    """Ambient coordinate triple of a Heisenberg group element."""

    x: float
    y: float
    z: float

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z


@dataclass(frozen=True)
class TangentVec:
    """Frame coefficients (a, b, c) on (X1, X2, X3) at some base point."""

    a: float
    b: float
    c: float

    def is_horizontal(self) -> bool:
        return self.c == 0

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c


ORIGIN = Point(0, 0, 0)


def mul(p: Point, q: Point) -> Point:
    """Group product: translations in x, y plus the area cross term in z."""
    return Point(
        p.x + q.x,
        p.y + q.y,
        p.z + q.z + (p.x * q.y - p.y * q.x) / 2,
    )


def inverse(p: Point) -> Point:
    """Group inverse; the cross term cancels by antisymmetry."""
    return Point(-p.x, -p.y, -p.z)


def rotate(alpha: float, p: Point) -> Point:
    """Rotation about the z-axis by the matrix [[c, s, 0], [-s, c, 0], [0, 0, 1]].

    This is a group automorphism and an isometry; it maps the horizontal
    frame to itself (headings shift by -alpha) and leaves z untouched.
    """
    c, s = math.cos(alpha), math.sin(alpha)
    return Point(c * p.x + s * p.y, -s * p.x + c * p.y, p.z)


def dilate(r, p: Point) -> Point:
    """Intrinsic dilation (x, y, z) -> (r x, r y, r^2 z), r > 0."""
    if r <= 0:
        raise ValueError(f"dilation coefficient must be positive, got {r}")
    return Point(r * p.x, r * p.y, r * r * p.z)


def dilate_tangent(r, v: TangentVec) -> TangentVec:
    """Pushforward of a frame vector under the dilation: (ra, rb, r^2 c)."""
    if r <= 0:
        raise ValueError(f"dilation coefficient must be positive, got {r}")
    return TangentVec(r * v.a, r * v.b, r * r * v.c)


def sr_norm(v: TangentVec) -> float:
    """Length of a horizontal vector: hypot of its (X1, X2) coefficients."""
    if v.c != 0:
        raise ValueError(f"norm is only defined on horizontal vectors, X3 coefficient {v.c}")
    return math.hypot(v.a, v.b)


def frame_to_ambient(v: TangentVec, at: Point) -> tuple:
    """Ambient components of a X1 + b X2 + c X3 at the given base point."""
    return (v.a, v.b, -v.a * at.y / 2 + v.b * at.x / 2 + v.c)


def ambient_to_frame(components, at: Point) -> TangentVec:
    """Frame coefficients of an ambient vector (vx, vy, vz) at a base point."""
    vx, vy, vz = components
    return TangentVec(vx, vy, vz + at.y * vx / 2 - at.x * vy / 2)


@dataclass(frozen=True)
class Isometry:
    """Composite map L_u o R_alpha: rotate about z, then left-translate by u.

    These generate exactly the isometries used to match curves with equal
    heading-rate profiles; reflections are deliberately excluded.
    """

    translation: Point
    angle: float

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(ORIGIN, 0.0)

    def compose(self, other: "Isometry") -> "Isometry":
        # rotations are group automorphisms, so R_a o L_v = L_{R_a v} o R_a
        return Isometry(
            mul(self.translation, rotate(self.angle, other.translation)),
            self.angle + other.angle,
        )

    def __call__(self, p: Point) -> Point:
        return apply_isometry(self, p)


def apply_isometry(iso: Isometry, p: Point) -> Point:
    return mul(iso.translation, rotate(iso.angle, p))
