"""Numerics for the Funk-Finsler metric on the Klein unit disc.

The Funk metric of the disc ``|x| < tanh(1)`` is a Randers metric whose
geodesics are straight chords. This package evaluates it in the Klein,
Poincare and upper half-plane models, integrates its geodesics and computes
its curvature and Zermelo navigation data, each closed form paired with an
independent numeric oracle.
"""

from .core import MetricField, RandersData, bh_density, check_homogeneity, clearance, fundamental_tensor
from .curvature import (
    CovariantData,
    CurvatureReport,
    classify,
    covariant_data,
    riemann_closed,
    riemann_numeric,
    s_curvature_closed,
    s_curvature_numeric,
)
from .disc import EuclideanDisc, funk_distance_disc, funk_finsler_disc, hilbert_distance_disc
from .errors import DegenerateWind, FinslerError, LorentzSignature, OutOfDomain, SingularTensor, ZeroVector
from .geodesics import (
    GeodesicTrace,
    curve_length,
    integrate_geodesic,
    integrate_geodesics,
    segment_length,
    spray_closed,
    spray_numeric,
)
from .klein import FUNK, KLEIN, R, S, funk_distance, funk_metric, funk_metric_cothdef, klein_distance, randers_data_at
from .models import funk_poincare, funk_upper, funk_upper_pullback, isometry_check, pullback
from .zermelo import NavigationData, from_navigation, to_navigation

__version__ = "0.1.0"

__all__ = [
    "CovariantData",
    "CurvatureReport",
    "DegenerateWind",
    "EuclideanDisc",
    "FUNK",
    "FinslerError",
    "GeodesicTrace",
    "KLEIN",
    "LorentzSignature",
    "MetricField",
    "NavigationData",
    "OutOfDomain",
    "R",
    "RandersData",
    "S",
    "SingularTensor",
    "ZeroVector",
    "bh_density",
    "check_homogeneity",
    "classify",
    "clearance",
    "covariant_data",
    "curve_length",
    "from_navigation",
    "fundamental_tensor",
    "funk_distance",
    "funk_distance_disc",
    "funk_finsler_disc",
    "funk_metric",
    "funk_metric_cothdef",
    "funk_poincare",
    "funk_upper",
    "funk_upper_pullback",
    "hilbert_distance_disc",
    "integrate_geodesic",
    "integrate_geodesics",
    "isometry_check",
    "klein_distance",
    "pullback",
    "randers_data_at",
    "riemann_closed",
    "riemann_numeric",
    "s_curvature_closed",
    "s_curvature_numeric",
    "segment_length",
    "spray_closed",
    "spray_numeric",
    "to_navigation",
]
