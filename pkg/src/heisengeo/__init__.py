"""Computation engine for the sub-Riemannian geometry of the Heisenberg group.

Exact distances from the closed formula, horizontal-curve integration from
heading profiles, exact truncated-series verification of the squared-distance
expansion, covariant derivatives and geodesic shooting in the approximating
metric family, plus numerical verification tooling (coefficient fits,
isometry reconstruction, Euler-spiral matching).
"""

from .core import (
    ORIGIN,
    Isometry,
    Point,
    TangentVec,
    apply_isometry,
    dilate,
    inverse,
    mul,
    rotate,
    sr_norm,
)
from .curves import (
    PlanarCurve,
    ThetaProfile,
    Trajectory,
    characteristic_deviation,
    dilate_curve,
    geodesic_curvature,
    integrate_curve,
    planar_curvature,
    project,
)
from .distance import distance, distance_from_origin, invert_psi, psi
from .geodesics import GeodesicParams, geodesic_point, minimality_horizon
from .series import PowerSeries, distance_sq_series

__version__ = "0.1.0"

__all__ = [
    "ORIGIN",
    "Isometry",
    "Point",
    "TangentVec",
    "apply_isometry",
    "dilate",
    "inverse",
    "mul",
    "rotate",
    "sr_norm",
    "PlanarCurve",
    "ThetaProfile",
    "Trajectory",
    "characteristic_deviation",
    "dilate_curve",
    "geodesic_curvature",
    "integrate_curve",
    "planar_curvature",
    "project",
    "distance",
    "distance_from_origin",
    "invert_psi",
    "psi",
    "GeodesicParams",
    "geodesic_point",
    "minimality_horizon",
    "PowerSeries",
    "distance_sq_series",
    "__version__",
]
