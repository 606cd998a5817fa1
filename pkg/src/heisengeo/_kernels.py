"""Hot numeric kernels: curve integration and the metric-family geodesic flow.

Both kernels exist twice: a numba @njit loop and a pure-numpy fallback.  The
active backend is chosen once at import time; set the environment variable
``HEISENGEO_NO_NUMBA=1`` to force the numpy path (or run on a machine without
numba).  ``benchmarks/bench_kernels.py`` compares the two.

Kernel contracts
----------------
rk4_curve(coeffs, x0, y0, z0, t0, h, n) -> (n+1, 4) array [x, y, z, theta]
    Classical fixed-step RK4 for the unit-speed horizontal system
        x' = cos(theta(t)),  y' = sin(theta(t)),  z' = (x y' - y x')/2
    with theta a polynomial given by its coefficient array (low to high).

hamilton_flow(eps, state0, h, n) -> final 6-state [x, y, z, px, py, pz]
hamilton_path(eps, state0, h, n) -> (n+1, 6) trajectory
    Classical RK4 for the geodesic Hamiltonian of the metric that makes
    (X1, X2, eps*X3) orthonormal:
        H = (h1^2 + h2^2 + eps^2 pz^2)/2,
        h1 = px - (y/2) pz,  h2 = py + (x/2) pz.
"""

from __future__ import annotations

import os

import numpy as np

_env = os.environ.get("HEISENGEO_NO_NUMBA", "").strip().lower()
_DISABLED = _env in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled via HEISENGEO_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # no-op decorator so both variants always exist
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


# ----------------------------------------------------------------- rk4_curve


@njit(cache=True)
def _rk4_curve_loop(coeffs, x0, y0, z0, t0, h, n):
    out = np.empty((n + 1, 4))
    x, y, z = x0, y0, z0
    m = coeffs.shape[0]

    t = t0
    th = 0.0
    for j in range(m - 1, -1, -1):
        th = th * t + coeffs[j]
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    out[0, 3] = th

    for i in range(n):
        t = t0 + i * h
        t1 = t
        tm = t + 0.5 * h
        t2 = t + h
        th1 = 0.0
        thm = 0.0
        th2 = 0.0
        for j in range(m - 1, -1, -1):
            th1 = th1 * t1 + coeffs[j]
            thm = thm * tm + coeffs[j]
            th2 = th2 * t2 + coeffs[j]
        c1, s1 = np.cos(th1), np.sin(th1)
        cm, sm = np.cos(thm), np.sin(thm)
        c2, s2 = np.cos(th2), np.sin(th2)

        # stage 1
        k1x, k1y = c1, s1
        k1z = (x * s1 - y * c1) / 2
        # stage 2
        xa, ya = x + 0.5 * h * k1x, y + 0.5 * h * k1y
        k2x, k2y = cm, sm
        k2z = (xa * sm - ya * cm) / 2
        # stage 3
        xb, yb = x + 0.5 * h * k2x, y + 0.5 * h * k2y
        k3x, k3y = cm, sm
        k3z = (xb * sm - yb * cm) / 2
        # stage 4
        xc, yc = x + h * k3x, y + h * k3y
        k4x, k4y = c2, s2
        k4z = (xc * s2 - yc * c2) / 2

        x += h * (k1x + 2 * k2x + 2 * k3x + k4x) / 6
        y += h * (k1y + 2 * k2y + 2 * k3y + k4y) / 6
        z += h * (k1z + 2 * k2z + 2 * k3z + k4z) / 6

        out[i + 1, 0] = x
        out[i + 1, 1] = y
        out[i + 1, 2] = z
        out[i + 1, 3] = th2
    return out


def _rk4_curve_numpy(coeffs, x0, y0, z0, t0, h, n):
    # The x/y equations do not depend on the state, so the RK4 update reduces
    # to a Simpson-weighted cumulative sum of cos/sin(theta) at the stage
    # times; the z update is affine in (x, y) with per-step constants.  This
    # evaluates the *same* RK4 recurrence as the jit loop, vectorized.
    ts = t0 + h * np.arange(n + 1)
    th_lo = np.polynomial.polynomial.polyval(ts, coeffs)
    th_mid = np.polynomial.polynomial.polyval(ts[:-1] + 0.5 * h, coeffs)

    c1, s1 = np.cos(th_lo[:-1]), np.sin(th_lo[:-1])
    cm, sm = np.cos(th_mid), np.sin(th_mid)
    c2, s2 = np.cos(th_lo[1:]), np.sin(th_lo[1:])

    dx = h * (c1 + 4 * cm + c2) / 6
    dy = h * (s1 + 4 * sm + s2) / 6
    x = x0 + np.concatenate(([0.0], np.cumsum(dx)))
    y = y0 + np.concatenate(([0.0], np.cumsum(dy)))

    # dz_i = A_i + B_i x_i + C_i y_i  (x_i, y_i at the step start)
    A = h * h / 12 * ((c1 * sm - s1 * cm) + (cm * s2 - sm * c2))
    B = h * (s1 + 4 * sm + s2) / 12
    C = -h * (c1 + 4 * cm + c2) / 12
    dz = A + B * x[:-1] + C * y[:-1]
    z = z0 + np.concatenate(([0.0], np.cumsum(dz)))

    out = np.empty((n + 1, 4))
    out[:, 0] = x
    out[:, 1] = y
    out[:, 2] = z
    out[:, 3] = th_lo
    return out


def _rk4_curve_numba(coeffs, x0, y0, z0, t0, h, n):
    return _rk4_curve_loop(
        np.ascontiguousarray(coeffs, dtype=np.float64),
        float(x0), float(y0), float(z0), float(t0), float(h), int(n),
    )


rk4_curve = _rk4_curve_numba if HAVE_NUMBA else _rk4_curve_numpy


# -------------------------------------------------------------- hamilton flow


@njit(cache=True, inline="always")
def _ham_rhs(s, eps2, d):
    x, y, px, py, pz = s[0], s[1], s[3], s[4], s[5]
    h1 = px - 0.5 * y * pz
    h2 = py + 0.5 * x * pz
    d[0] = h1
    d[1] = h2
    d[2] = -0.5 * y * h1 + 0.5 * x * h2 + eps2 * pz
    d[3] = -0.5 * h2 * pz
    d[4] = 0.5 * h1 * pz
    d[5] = 0.0


@njit(cache=True)
def _hamilton_path_loop(eps, state0, h, n):
    eps2 = eps * eps
    out = np.empty((n + 1, 6))
    s = state0.copy()
    out[0] = s
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    k4 = np.empty(6)
    tmp = np.empty(6)
    for i in range(n):
        _ham_rhs(s, eps2, k1)
        for j in range(6):
            tmp[j] = s[j] + 0.5 * h * k1[j]
        _ham_rhs(tmp, eps2, k2)
        for j in range(6):
            tmp[j] = s[j] + 0.5 * h * k2[j]
        _ham_rhs(tmp, eps2, k3)
        for j in range(6):
            tmp[j] = s[j] + h * k3[j]
        _ham_rhs(tmp, eps2, k4)
        for j in range(6):
            s[j] += h * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]) / 6
        out[i + 1] = s
    return out


def _ham_rhs_np(s, eps2):
    x, y, px, py, pz = s[0], s[1], s[3], s[4], s[5]
    h1 = px - 0.5 * y * pz
    h2 = py + 0.5 * x * pz
    return np.array(
        [
            h1,
            h2,
            -0.5 * y * h1 + 0.5 * x * h2 + eps2 * pz,
            -0.5 * h2 * pz,
            0.5 * h1 * pz,
            0.0,
        ]
    )


def _hamilton_path_numpy(eps, state0, h, n):
    eps2 = eps * eps
    out = np.empty((n + 1, 6))
    s = np.asarray(state0, dtype=np.float64).copy()
    out[0] = s
    for i in range(n):
        k1 = _ham_rhs_np(s, eps2)
        k2 = _ham_rhs_np(s + 0.5 * h * k1, eps2)
        k3 = _ham_rhs_np(s + 0.5 * h * k2, eps2)
        k4 = _ham_rhs_np(s + h * k3, eps2)
        s = s + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        out[i + 1] = s
    return out


def _hamilton_path_numba(eps, state0, h, n):
    return _hamilton_path_loop(
        float(eps),
        np.ascontiguousarray(state0, dtype=np.float64),
        float(h),
        int(n),
    )


hamilton_path = _hamilton_path_numba if HAVE_NUMBA else _hamilton_path_numpy


def hamilton_flow(eps, state0, h, n):
    """Final state only; the path variant is for conservation checks."""
    return hamilton_path(eps, state0, h, n)[-1]


def hamiltonian_energy(eps, state):
    x, y, px, py, pz = state[0], state[1], state[3], state[4], state[5]
    h1 = px - 0.5 * y * pz
    h2 = py + 0.5 * x * pz
    return 0.5 * (h1 * h1 + h2 * h2 + eps * eps * pz * pz)


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
