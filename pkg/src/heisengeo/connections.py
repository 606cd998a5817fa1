"""Covariant derivatives and distances in the metric family g_eps.

g_eps makes (X1, X2, eps*X3) orthonormal; its Levi-Civita connection has the
eps-independent horizontal table

    D_X1 X1 = 0,  D_X2 X2 = 0,  D_X1 X2 = X3/2 = -D_X2 X1,

which a Koszul-formula evaluator rederives here from the bracket relations
alone ([X1, X2] = X3, [Xi, X3] = 0).  The Tanaka-Webster connection annuls
all horizontal pairs, so both connections give the velocity derivative
h(t) (-sin theta X1 + cos theta X2) along a unit-speed horizontal curve.

The distance d_eps has no closed form here; it is computed by shooting on
the geodesic Hamiltonian flow (see `_kernels.hamilton_path`): Newton
iteration on the initial covector with the flow time normalized to 1, so the
length is sqrt(2H).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .analysis import FitReport, fit_taylor
from .core import ORIGIN, Point, TangentVec, inverse, mul
from .curves import ThetaProfile, integrate_curve
from .distance import distance_from_origin, invert_psi

__all__ = [
    "EpsMetric",
    "CovariantDerivative",
    "ShootingError",
    "christoffel_table",
    "koszul_table",
    "lc_cov_deriv",
    "tw_cov_deriv",
    "eps_geodesic_flow",
    "eps_flow_path",
    "eps_distance",
    "eps_expansion_check",
    "default_fit_window",
]


@dataclass(frozen=True)
class EpsMetric:
    """The Riemannian structure with orthonormal frame (X1, X2, eps*X3)."""

    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    def norm(self, v: TangentVec) -> float:
        c = v.c / self.epsilon
        return math.sqrt(v.a * v.a + v.b * v.b + c * c)


@dataclass(frozen=True)
class CovariantDerivative:
    """Frame coefficients of the velocity's covariant derivative at a point."""

    components: TangentVec
    base: Point


class ShootingError(RuntimeError):
    """Boundary-value iteration failed; carries the endpoint residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def christoffel_table(eps: EpsMetric) -> dict:
    """Horizontal-pair covariant derivatives, exact and eps-independent."""
    if not eps.epsilon > 0:
        raise ValueError("epsilon must be positive")
    half = Fraction(1, 2)
    return {
        (1, 1): TangentVec(0, 0, 0),
        (2, 2): TangentVec(0, 0, 0),
        (1, 2): TangentVec(0, 0, half),
        (2, 1): TangentVec(0, 0, -half),
    }


def koszul_table(epsilon) -> dict:
    """Recompute the horizontal table from first principles.

    Works over the orthonormal frame E = (X1, X2, eps*X3) with structure
    constants from [X1, X2] = X3 and [Xi, X3] = 0, using the constant-frame
    Koszul identity 2 <D_Ei Ej, Ek> = c_ijk + c_kij - c_jki.  Accepts an
    exact `Fraction` epsilon for exact output.
    """
    one = epsilon / epsilon  # unit of the coefficient type
    zero = one - one
    inv_eps = one / epsilon
    # c[i][j][k] = <[E_i, E_j], E_k>
    c = [[[zero] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = inv_eps      # [X1, X2] = X3 = (1/eps) E3
    c[1][0][2] = -inv_eps
    table = {}
    for i in range(2):
        for j in range(2):
            coeffs_e = []
            for k in range(3):
                val = (c[i][j][k] + c[k][i][j] - c[j][k][i]) / 2
                coeffs_e.append(val)
            # convert from the E-frame to the X-frame: E3 = eps X3
            table[(i + 1, j + 1)] = TangentVec(
                coeffs_e[0], coeffs_e[1], coeffs_e[2] * epsilon
            )
    return table


def _velocity_derivative(profile: ThetaProfile, t: float) -> TangentVec:
    h = float(profile.deviation(t))
    th = float(profile.theta(t))
    return TangentVec(-h * math.sin(th), h * math.cos(th), 0.0)


def lc_cov_deriv(
    profile: ThetaProfile, t: float, eps: EpsMetric, at: Point = ORIGIN
) -> CovariantDerivative:
    """Levi-Civita derivative of the velocity along the profile's curve.

    Equals h(t)(-sin theta X1 + cos theta X2) for every eps; its g_eps norm
    is |h(t)|.
    """
    profile._check_domain(t)
    if not eps.epsilon > 0:
        raise ValueError("epsilon must be positive")
    return CovariantDerivative(_velocity_derivative(profile, t), at)


def tw_cov_deriv(profile: ThetaProfile, t: float, at: Point = ORIGIN) -> CovariantDerivative:
    """Tanaka-Webster derivative of the velocity: same frame components."""
    profile._check_domain(t)
    return CovariantDerivative(_velocity_derivative(profile, t), at)


def eps_flow_path(
    eps: EpsMetric, start: Point, covector, t: float, step: float
) -> np.ndarray:
    """Full (n+1, 6) Hamiltonian trajectory [x, y, z, px, py, pz]."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    n = max(1, round(abs(t) / step))
    h = t / n
    state0 = np.array(
        [start.x, start.y, start.z, covector[0], covector[1], covector[2]],
        dtype=np.float64,
    )
    return _kernels.hamilton_path(eps.epsilon, state0, h, n)


def eps_geodesic_flow(
    eps: EpsMetric, start: Point, covector, t: float, step: float = 1e-3
) -> Point:
    """Endpoint of the geodesic flow from `start` with the given covector."""
    final = eps_flow_path(eps, start, covector, t, step)[-1]
    return Point(final[0], final[1], final[2])


def _sr_covector_guess(target: Point) -> np.ndarray:
    """Covector of the sub-Riemannian minimizer, scaled for unit flow time."""
    r2 = target.x * target.x + target.y * target.y
    if r2 == 0:
        return np.array([0.0, 0.0, 0.0])
    u = invert_psi(target.z / r2)
    sinc = math.sin(u) / u if u != 0 else 1.0
    d = math.sqrt(r2) / sinc
    omega = 2 * u / d
    theta0 = math.atan2(target.y, target.x) - u
    return d * np.array([math.cos(theta0), math.sin(theta0), omega])


def eps_distance(
    eps: EpsMetric,
    p: Point,
    q: Point,
    tol: float = 1e-10,
    step: float = 1e-3,
    max_iter: int = 50,
) -> float:
    """Distance in g_eps by single shooting.

    Left-translates so p is the origin, then Newton-iterates the initial
    covector of a unit-time flow until the endpoint matches (finite-difference
    Jacobian, damped steps).  The returned length is sqrt(2H).  Intended for
    targets within the single-shot convergence window; failure raises
    `ShootingError` with the residual.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = mul(inverse(p), q)
    target = np.array([w.x, w.y, w.z])
    scale = max(1.0, float(np.abs(target).max()))
    if not np.any(target):
        return 0.0

    e = eps.epsilon
    if target[0] == 0 and target[1] == 0:
        # the vertical line is itself a geodesic (see module docstring); it
        # is the minimizer for |z| below ~4 pi eps^2
        p0 = np.array([0.0, 0.0, target[2] / (e * e)])
    else:
        p0 = _sr_covector_guess(w)

    def endpoint(cov):
        state0 = np.array([0.0, 0.0, 0.0, cov[0], cov[1], cov[2]])
        n = max(1, round(1.0 / step))
        return _kernels.hamilton_path(e, state0, 1.0 / n, n)[-1, :3]

    res = endpoint(p0) - target
    rnorm = float(np.linalg.norm(res))
    for _ in range(max_iter):
        if rnorm <= tol * scale:
            state = np.array([0.0, 0.0, 0.0, p0[0], p0[1], p0[2]])
            return math.sqrt(2 * _kernels.hamiltonian_energy(e, state))
        # forward-difference Jacobian
        J = np.empty((3, 3))
        fd = 1e-7 * max(1.0, float(np.abs(p0).max()))
        for j in range(3):
            dp = p0.copy()
            dp[j] += fd
            J[:, j] = (endpoint(dp) - target - res) / fd
        try:
            delta = np.linalg.solve(J, -res)
        except np.linalg.LinAlgError as exc:
            raise ShootingError(f"singular shooting Jacobian: {exc}", rnorm) from exc
        # damped update
        lam = 1.0
        while lam >= 1.0 / 64:
            trial = p0 + lam * delta
            tres = endpoint(trial) - target
            tnorm = float(np.linalg.norm(tres))
            if tnorm < rnorm:
                p0, res, rnorm = trial, tres, tnorm
                break
            lam /= 2
        else:
            raise ShootingError(
                f"shooting stalled with residual {rnorm:.3e}", rnorm
            )
    raise ShootingError(
        f"shooting did not converge within {max_iter} iterations; residual {rnorm:.3e}",
        rnorm,
    )


def default_fit_window(epsilon: float, n_samples: int = 12) -> np.ndarray:
    """Geometric sample grid for the quartic-coefficient fit.

    The quartic term of d_eps^2 dominates only at arc lengths below ~eps
    (beyond that the distance crosses over to its horizontal behaviour and a
    fixed window would bias the fit), so the window scales with eps:
    t in [0.1 eps, 0.8 eps].
    """
    return np.geomspace(0.1 * epsilon, 0.8 * epsilon, n_samples)


def eps_expansion_check(
    profile: ThetaProfile,
    eps: EpsMetric,
    t_samples=None,
    step: float = 1e-3,
    shoot_tol: float = 1e-12,
) -> FitReport:
    """Fit d_eps^2 along the curve as t^2 + c4 t^4 + c5 t^5 + c6 t^6.

    Returns the fit report; coefficient 4 should match -h(0)^2/12.
    """
    if t_samples is None:
        t_samples = default_fit_window(eps.epsilon)
    t_samples = np.asarray(t_samples, dtype=float)
    samples = []
    for t in t_samples:
        traj = integrate_curve(profile, float(t), max(float(t) / 2000, 1e-6))
        end = traj.point(-1)
        d = eps_distance(eps, ORIGIN, end, tol=shoot_tol, step=step)
        samples.append((float(t), d * d))
    return fit_taylor(samples, fixed_part=[0.0, 0.0, 1.0], powers=[4, 5, 6])


def sr_distance_upper_bound(p: Point, q: Point) -> float:
    """The horizontal distance dominates every d_eps (more competitors)."""
    return distance_from_origin(mul(inverse(p), q))
