import math

import numpy as np
import pytest
from scipy.special import fresnel as scipy_fresnel

from heisengeo.analysis import (
    FitReport,
    SpiralMatch,
    fit_taylor,
    fresnel,
    match_euler_spiral,
    reconstruct_isometry,
)
from heisengeo.core import Isometry, Point, apply_isometry
from heisengeo.curves import ThetaProfile, integrate_curve, planar_curvature, project


# ----------------------------------------------------------------- fit_taylor


def test_fit_recovers_exact_polynomial_data():
    ts = np.geomspace(0.05, 0.5, 12)
    vals = ts**2 - ts**6 / 180
    report = fit_taylor(list(zip(ts, vals)), fixed_part=[0, 0, 1], powers=[6, 7, 8])
    assert report.coefficients[6].estimate == pytest.approx(-1 / 180, rel=1e-10)
    assert abs(report.coefficients[7].estimate) <= 1e-12
    assert report.residual_norm <= 1e-15


def test_fit_synthetic_random_polynomials():
    rng = np.random.default_rng(41)
    for _ in range(10):
        powers = [4, 5, 6]
        true = rng.uniform(-2, 2, size=3)
        ts = np.geomspace(0.02, 0.3, 15)
        vals = ts**2 + sum(c * ts**p for c, p in zip(true, powers))
        report = fit_taylor(list(zip(ts, vals)), [0, 0, 1], powers)
        for p, c in zip(powers, true):
            assert report.coefficients[p].estimate == pytest.approx(c, rel=1e-9, abs=1e-11)


def test_fit_requires_enough_distinct_samples():
    with pytest.raises(ValueError):
        fit_taylor([(0.1, 1.0), (0.2, 2.0)], [0], powers=[1, 2])
    with pytest.raises(ValueError):
        fit_taylor([(0.1, 1.0), (0.1, 1.0), (0.2, 2.0), (0.3, 1.0)], [0], powers=[1, 2])


def test_fit_rank_deficiency_detected():
    ts = np.geomspace(0.05, 0.5, 8)
    vals = ts**2
    with pytest.raises(ValueError):
        fit_taylor(list(zip(ts, vals)), [0], powers=[3, 3])


def test_fit_reports_window_and_stderr():
    ts = np.linspace(0.1, 1.0, 20)
    rng = np.random.default_rng(5)
    vals = 2 * ts**3 + rng.normal(0, 1e-9, size=ts.size)
    report = fit_taylor(list(zip(ts, vals)), [0], powers=[3])
    assert report.window == (0.1, 1.0)
    assert report.coefficients[3].estimate == pytest.approx(2.0, abs=1e-7)
    assert 0 < report.coefficients[3].stderr < 1e-6
    assert isinstance(report.to_json_dict()["coefficients"]["3"]["estimate"], float)


@pytest.mark.parametrize("k0", [1.0, 2.0, 5.0])
def test_fit_agrees_with_exact_series_coefficient(k0):
    # numeric route (integration + closed-form distance + fit) against the
    # exact-series route for the same heading profile
    from fractions import Fraction

    from heisengeo.distance import distance_from_origin
    from heisengeo.series import distance_sq_series

    exact = float(distance_sq_series([0, 0, Fraction(k0) / 2], 8)[6])
    assert exact == -(k0**2) / 720
    profile = ThetaProfile([0.0, 0.0, k0 / 2])
    traj = integrate_curve(profile, 0.5, 1e-4)
    samples = []
    for t in np.geomspace(0.05, 0.5, 20):
        i = int(round(t / traj.step))
        d = distance_from_origin(traj.point(i))
        samples.append((traj.times[i], d * d))
    report = fit_taylor(samples, [0, 0, 1], [6, 7, 8])
    c6 = report.coefficients[6].estimate
    assert abs(c6 - exact) / abs(exact) <= 0.02


# -------------------------------------------------------------------- fresnel


def simpson_fresnel(t, n=4001):
    """Richardson-refined composite Simpson oracle."""

    def simpson(f, n):
        xs = np.linspace(0.0, t, n)
        w = np.ones(n)
        w[1:-1:2] = 4
        w[2:-1:2] = 2
        return (xs[1] - xs[0]) / 3 * (w @ f(xs))

    fc = lambda u: np.cos(u * u)
    fs = lambda u: np.sin(u * u)
    # one Richardson step on top of Simpson (h^4 -> h^6)
    c = (16 * simpson(fc, 2 * n - 1) - simpson(fc, n)) / 15
    s = (16 * simpson(fs, 2 * n - 1) - simpson(fs, n)) / 15
    return c, s


def test_fresnel_zero():
    assert fresnel(0.0) == (0.0, 0.0)


def test_fresnel_oddness():
    for t in (0.4, 1.3):
        c, s = fresnel(t)
        cm, sm = fresnel(-t)
        assert cm == pytest.approx(-c, abs=1e-12)
        assert sm == pytest.approx(-s, abs=1e-12)


def test_fresnel_matches_quadrature_oracle():
    c, s = fresnel(1.0)
    co, so = simpson_fresnel(1.0)
    assert c == pytest.approx(co, abs=1e-10)
    assert s == pytest.approx(so, abs=1e-10)


def test_fresnel_matches_scipy_convention():
    # scipy integrates cos(pi u^2 / 2); substitute to compare
    for t in (0.5, 1.0, 2.0):
        c, s = fresnel(t)
        k = math.sqrt(math.pi / 2)
        ss, cc = scipy_fresnel(t / k)
        assert c == pytest.approx(k * cc, abs=1e-12)
        assert s == pytest.approx(k * ss, abs=1e-12)


# ------------------------------------------------------------ reconstruction


def make_traj(coeffs, start, t_end=1.0, step=1e-3):
    return integrate_curve(ThetaProfile(coeffs), t_end, step, start=start)


def transform_traj(traj, iso):
    pts = np.empty_like(traj.points)
    for i in range(len(traj)):
        q = apply_isometry(iso, traj.point(i))
        pts[i] = (q.x, q.y, q.z)
    # a z-rotation by beta lowers headings by beta
    return type(traj)(
        times=traj.times.copy(),
        points=pts,
        thetas=traj.thetas - iso.angle,
        step=traj.step,
        method=traj.method,
    )


def test_reconstruct_recovers_known_isometry():
    z1 = make_traj([0.2, 1.0, -0.5], Point(0.0, 0.0, 0.0))
    iota0 = Isometry(Point(0.4, -0.7, 0.3), 1.1)
    z2 = transform_traj(z1, iota0)
    iota, residual = reconstruct_isometry(z1, z2)
    assert residual <= 1e-9
    assert iota.angle == pytest.approx(1.1, abs=1e-12)
    assert iota.translation.x == pytest.approx(0.4, abs=1e-12)
    p = apply_isometry(iota, z1.point(500))
    assert np.abs(np.array(list(p)) - z2.points[500]).max() <= 1e-9


def test_reconstruct_identity():
    z1 = make_traj([0.1, 0.5, 0.5], Point(0.2, 0.1, -0.3))
    iota, residual = reconstruct_isometry(z1, z1)
    assert residual == 0.0
    assert iota.angle == 0.0
    p = apply_isometry(iota, z1.point(123))
    assert np.abs(np.array(list(p)) - z1.points[123]).max() <= 1e-12


def test_reconstruct_same_h_profile_different_frames():
    # same heading-rate profile, different initial headings and start points
    rng = np.random.default_rng(77)
    h_coeffs = [1.0, -0.5, 0.3]  # theta' coefficients
    theta_tail = [c / (i + 1) for i, c in enumerate(h_coeffs)]
    for _ in range(3):
        th1, th2 = rng.uniform(-3, 3, 2)
        s1 = Point(*rng.uniform(-1, 1, 3))
        s2 = Point(*rng.uniform(-1, 1, 3))
        z1 = make_traj([th1] + theta_tail, s1, step=1e-4)
        z2 = make_traj([th2] + theta_tail, s2, step=1e-4)
        iota, residual = reconstruct_isometry(z1, z2)
        assert residual <= 1e-8


def test_reconstruct_residual_tracks_integrator_error():
    # two curves integrated with the same scheme match to roundoff (RK4 is
    # exactly equivariant under rotations/translations), so the convergence
    # behaviour is measured against an exactly known curve instead
    from heisengeo.curves import Trajectory
    from heisengeo.geodesics import GeodesicParams, geodesic_point

    omega, th1, th2 = 1.5, 0.3, -0.9
    s2 = Point(-0.4, 0.0, 0.2)
    g = GeodesicParams(omega, th2, base=s2)
    res = []
    for step in (0.02, 0.01):
        z1 = make_traj([th1, omega], Point(0, 0, 0), step=step)
        pts = np.array([list(geodesic_point(g, t)) for t in z1.times])
        z2 = Trajectory(
            times=z1.times.copy(),
            points=pts,
            thetas=th2 + omega * z1.times,
            step=z1.step,
            method="closed-form",
        )
        _, r = reconstruct_isometry(z1, z2)
        res.append(r)
    assert res[0] > 1e-12  # above the roundoff floor, so the ratio means something
    assert res[1] <= res[0] / 2


def test_reconstruct_residual_roundoff_floor_for_twin_integrations():
    # the equivariance argument above, checked directly
    tail = [0.8, 0.3]
    z1 = make_traj([0.3] + tail, Point(0.1, 0.2, 0.0), step=4e-3)
    z2 = make_traj([-0.9] + tail, Point(-0.4, 0.0, 0.2), step=4e-3)
    _, r = reconstruct_isometry(z1, z2)
    assert r <= 1e-12


def test_reconstruct_detects_mismatched_profiles():
    z1 = make_traj([0.0, 1.0], Point(0, 0, 0))
    z2 = make_traj([0.0, 1.0, 0.8], Point(0, 0, 0))
    _, residual = reconstruct_isometry(z1, z2)
    assert residual > 1e-3


def test_reconstruct_requires_shared_grid():
    z1 = make_traj([0.0, 1.0], Point(0, 0, 0), step=1e-2)
    z2 = make_traj([0.0, 1.0], Point(0, 0, 0), step=2e-2)
    with pytest.raises(ValueError):
        reconstruct_isometry(z1, z2)


# ------------------------------------------------------------------- spirals


def test_spiral_pure_quadratic_heading():
    traj = integrate_curve(ThetaProfile([0.0, 0.0, 1.0]), 1.0, 1e-3)
    match = match_euler_spiral(project(traj), k_const=2.0)
    assert match.a == pytest.approx(1.0)
    assert match.b == pytest.approx(0.0, abs=1e-8)
    assert not match.reflect
    assert match.residual <= 1e-7


def test_spiral_reflected_for_negative_curvature():
    traj = integrate_curve(ThetaProfile([0.0, 0.0, -1.0]), 1.0, 1e-3)
    match = match_euler_spiral(project(traj), k_const=-2.0)
    assert match.reflect
    assert match.residual <= 1e-7


def test_spiral_completing_the_square():
    # theta = t + t^2: (t + 1/2)^2 - 1/4
    traj = integrate_curve(ThetaProfile([0.0, 1.0, 1.0]), 1.0, 1e-3)
    match = match_euler_spiral(project(traj), k_const=2.0)
    assert match.a == pytest.approx(1.0)
    assert match.b == pytest.approx(0.5, abs=1e-7)
    assert match.c == pytest.approx(-0.25, abs=1e-6)
    assert match.residual <= 1e-6


def test_spiral_random_constant_curvatures():
    rng = np.random.default_rng(91)
    for _ in range(10):
        k = float(rng.uniform(0.5, 5.0))
        th0 = float(rng.uniform(-math.pi, math.pi))
        h0 = float(rng.uniform(-1.0, 1.0))
        traj = integrate_curve(ThetaProfile([th0, h0, k / 2]), 1.0, 1e-3)
        match = match_euler_spiral(project(traj), k_const=k)
        assert match.residual <= 1e-6


def test_spiral_rejects_zero_curvature():
    traj = integrate_curve(ThetaProfile([0.0, 1.0]), 1.0, 1e-2)
    with pytest.raises(ValueError):
        match_euler_spiral(project(traj), k_const=0.0)


def test_zero_curvature_projects_to_circle():
    # k = 0 with h != 0: circle of radius 1/|h|
    h = 1.7
    traj = integrate_curve(ThetaProfile([0.4, h]), 2.0, 1e-3)
    pc = project(traj)
    center = np.array(
        [-math.sin(0.4) / h + 0.0, math.cos(0.4) / h]
    )
    radii = np.hypot(pc.xy[:, 0] - center[0], pc.xy[:, 1] - center[1])
    assert np.abs(radii - 1 / abs(h)).max() <= 1e-8
    for t in (0.2, 1.0, 1.9):
        assert planar_curvature(pc, t) == pytest.approx(h, abs=1e-8)
