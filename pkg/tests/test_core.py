import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisengeo.core import (
    ORIGIN,
    Isometry,
    Point,
    TangentVec,
    ambient_to_frame,
    apply_isometry,
    dilate,
    dilate_tangent,
    frame_to_ambient,
    inverse,
    mul,
    rotate,
    sr_norm,
)

F = Fraction

fractions_st = st.fractions(min_value=-20, max_value=20, max_denominator=50)
points_st = st.builds(Point, fractions_st, fractions_st, fractions_st)


# ------------------------------------------------------------------ group law


def test_mul_basic_cross_term():
    assert mul(Point(1, 0, 0), Point(0, 1, 0)) == Point(1, 1, F(1, 2))


def test_identity_element():
    p = Point(1.5, -2.25, 0.75)
    assert mul(ORIGIN, p) == p
    assert mul(p, ORIGIN) == p


def test_inverse_examples():
    assert inverse(Point(1, 2, 3)) == Point(-1, -2, -3)
    assert inverse(ORIGIN) == ORIGIN


@settings(max_examples=60, deadline=None)
@given(points_st)
def test_inverse_property(p):
    assert mul(p, inverse(p)) == ORIGIN
    assert mul(inverse(p), p) == ORIGIN


@settings(max_examples=100, deadline=None)
@given(points_st, points_st, points_st)
def test_associativity_exact(p, q, r):
    assert mul(mul(p, q), r) == mul(p, mul(q, r))


def test_associativity_exact_bulk():
    rng = random.Random(20240605)

    def rp():
        return Point(
            F(rng.randint(-99, 99), rng.randint(1, 30)),
            F(rng.randint(-99, 99), rng.randint(1, 30)),
            F(rng.randint(-99, 99), rng.randint(1, 30)),
        )

    for _ in range(1000):
        p, q, r = rp(), rp(), rp()
        assert mul(mul(p, q), r) == mul(p, mul(q, r))


def test_associativity_float_bulk():
    rng = np.random.default_rng(11)
    pts = rng.uniform(-10, 10, size=(1000, 3, 3))
    for a, b, c in pts:
        p, q, r = Point(*a), Point(*b), Point(*c)
        lhs = mul(mul(p, q), r)
        rhs = mul(p, mul(q, r))
        assert abs(lhs.x - rhs.x) <= 1e-12
        assert abs(lhs.y - rhs.y) <= 1e-12
        assert abs(lhs.z - rhs.z) <= 1e-12


# ------------------------------------------------------------------ rotations


def test_rotate_quarter_turn():
    got = rotate(math.pi / 2, Point(1, 0, 5))
    assert got.x == pytest.approx(0, abs=1e-15)
    assert got.y == pytest.approx(-1)
    assert got.z == 5


def test_rotate_zero_is_identity():
    p = Point(0.3, -0.7, 2.0)
    got = rotate(0.0, p)
    assert got == p


def test_rotate_composition():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b = rng.uniform(-6, 6, 2)
        p = Point(*rng.uniform(-5, 5, 3))
        lhs = rotate(a, rotate(b, p))
        rhs = rotate(a + b, p)
        assert abs(lhs.x - rhs.x) <= 1e-12
        assert abs(lhs.y - rhs.y) <= 1e-12
        assert lhs.z == rhs.z


def test_rotate_is_group_automorphism():
    rng = np.random.default_rng(4)
    for _ in range(50):
        a = rng.uniform(-4, 4)
        p = Point(*rng.uniform(-3, 3, 3))
        q = Point(*rng.uniform(-3, 3, 3))
        lhs = rotate(a, mul(p, q))
        rhs = mul(rotate(a, p), rotate(a, q))
        assert abs(lhs.x - rhs.x) <= 1e-12
        assert abs(lhs.y - rhs.y) <= 1e-12
        assert abs(lhs.z - rhs.z) <= 1e-12


# ------------------------------------------------------------------ dilations


def test_dilate_example():
    assert dilate(2, Point(1, 1, 1)) == Point(2, 2, 4)
    assert dilate(1, Point(3, -2, 5)) == Point(3, -2, 5)


def test_dilate_rejects_nonpositive():
    with pytest.raises(ValueError):
        dilate(0, ORIGIN)
    with pytest.raises(ValueError):
        dilate(-1.5, ORIGIN)


@settings(max_examples=60, deadline=None)
@given(points_st, st.sampled_from([F(1, 3), F(2), F(7, 5), F(5, 2)]),
       st.sampled_from([F(1, 2), F(3), F(9, 4)]))
def test_dilate_composition_exact(p, r, s):
    assert dilate(r, dilate(s, p)) == dilate(r * s, p)


def test_dilate_is_group_homomorphism():
    p = Point(F(1, 2), F(2, 3), F(-1, 5))
    q = Point(F(3), F(-1, 7), F(2))
    r = F(5, 3)
    assert dilate(r, mul(p, q)) == mul(dilate(r, p), dilate(r, q))


# ------------------------------------------------------------------ sr_norm


def test_sr_norm_values():
    assert sr_norm(TangentVec(1, 0, 0)) == 1
    assert sr_norm(TangentVec(3, 4, 0)) == 5


def test_sr_norm_rejects_nonhorizontal():
    with pytest.raises(ValueError):
        sr_norm(TangentVec(1, 0, 0.5))


def test_sr_norm_dilation_scaling():
    v = TangentVec(3, 4, 0)
    for r in (0.5, 2.0, 7.25):
        assert sr_norm(dilate_tangent(r, v)) == pytest.approx(r * 5, rel=1e-15)


# ------------------------------------------------------------------ frames


def test_frame_ambient_roundtrip():
    rng = np.random.default_rng(5)
    for _ in range(30):
        at = Point(*rng.uniform(-3, 3, 3))
        v = TangentVec(*rng.uniform(-2, 2, 3))
        back = ambient_to_frame(frame_to_ambient(v, at), at)
        assert back.a == pytest.approx(v.a, abs=1e-14)
        assert back.b == pytest.approx(v.b, abs=1e-14)
        assert back.c == pytest.approx(v.c, abs=1e-14)


def test_horizontal_vector_ambient_form():
    # a X1 + b X2 at (x, y, z) has vertical ambient component (x b - y a)/2
    at = Point(2.0, -3.0, 1.0)
    amb = frame_to_ambient(TangentVec(1.0, 2.0, 0.0), at)
    assert amb == (1.0, 2.0, (-(-3.0) * 1.0 + 2.0 * 2.0) / 2)


# ------------------------------------------------------------------ isometries


def test_identity_isometry():
    p = Point(0.1, 0.2, 0.3)
    assert apply_isometry(Isometry.identity(), p) == p


def test_pure_rotation_matches_rotate():
    p = Point(1.25, -0.5, 2.0)
    iso = Isometry(ORIGIN, 0.7)
    assert apply_isometry(iso, p) == rotate(0.7, p)


def test_isometry_composition_agrees_with_sequential_application():
    rng = np.random.default_rng(6)
    for _ in range(40):
        i1 = Isometry(Point(*rng.uniform(-2, 2, 3)), rng.uniform(-3, 3))
        i2 = Isometry(Point(*rng.uniform(-2, 2, 3)), rng.uniform(-3, 3))
        p = Point(*rng.uniform(-2, 2, 3))
        seq = apply_isometry(i1, apply_isometry(i2, p))
        once = apply_isometry(i1.compose(i2), p)
        assert seq.x == pytest.approx(once.x, abs=1e-12)
        assert seq.y == pytest.approx(once.y, abs=1e-12)
        assert seq.z == pytest.approx(once.z, abs=1e-12)
