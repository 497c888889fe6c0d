"""Model maps of the hyperbolic plane and pullbacks of the Funk metric.

Maps
----
``POINCARE_TO_KLEIN``  f(x) = 2x / (1 + |x|^2)
``KLEIN_TO_UPPER``     g(x) = (2x^2 / (1 + x^1), 2 sqrt(1 - |x|^2) / (1 + x^1))
``UPPER_TO_KLEIN``     g^-1(x) = ((4 - |x|^2) / (4 + |x|^2), 4x^1 / (4 + |x|^2))
``HYPERBOLOID``        eta(x) = (x, R) / sqrt(R^2 - |x|^2)
``HEMISPHERE``         Psi(x) = (x, sqrt(R^2 - |x|^2))

Ambient metrics ``LORENTZ_RANDERS`` (on the upper half space) and
``HEMISPHERE_RANDERS`` (on the cylinder over the unit disc) pull back along
``HYPERBOLOID`` and ``HEMISPHERE`` to the Funk metric of :mod:`.klein`.

The closed Funk forms on the Poincare disc and the upper half-plane are
pullbacks of :func:`funkfinsler.klein.funk_metric`; the ``*_pullback``
functions are the reference values and ``funk_upper`` reproduces the
published closed form verbatim so that it can be compared against them.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import (
    BOUNDARY_MARGIN,
    MetricField,
    as_points,
    dot,
    in_disc,
    norm_sq,
    require_in_disc,
    sample_tangent,
    scalar_or_array,
)
from .errors import LorentzSignature, OutOfDomain
from .klein import KLEIN, R, S, alpha_beta, funk_metric

#: Euclidean radius of the Poincare unit disc, (e - 1)/(e + 1) = tanh(1/2).
R_POINCARE = math.tanh(0.5)
#: Euclidean centre and radius of the unit hyperbolic disc about (0, 2) in the upper half-plane.
UPPER_CENTER = (0.0, math.e + 1.0 / math.e)
R_UPPER = math.e - 1.0 / math.e

JACOBIAN_STEP = 1e-6


@dataclass(frozen=True)
class ChartMap:
    """A smooth map from an open subset of the plane into R^2 or R^3.

    ``eval`` and ``jacobian_closed`` broadcast over leading axes; the
    Jacobian has shape ``(..., dim_out, 2)``.
    """

    name: str
    dim_out: int
    eval: Callable
    domain: Callable
    jacobian_closed: Optional[Callable] = None

    def __call__(self, x):
        return map_eval(self, x)

    def jacobian(self, x, numeric=False):
        x = self._check(x)
        if numeric or self.jacobian_closed is None:
            return numeric_jacobian(self.eval, x)
        return self.jacobian_closed(x)

    def _check(self, x):
        x = as_points(x)
        if not np.all(self.domain(x)):
            raise OutOfDomain(f"{self.name}: point outside the map's domain")
        return x


@dataclass(frozen=True)
class AmbientMetric:
    """A Randers-type function on tangent vectors of R^2 or R^3."""

    name: str
    eval: Callable
    signature: str
    domain: Callable

    def __call__(self, point, vec):
        point = as_points(point)
        if not np.all(self.domain(point)):
            raise OutOfDomain(f"{self.name}: point outside the ambient domain")
        return self.eval(point, as_points(vec))


def numeric_jacobian(fun, x):
    """Central-difference Jacobian with step ``1e-6 (1 + |x|)``."""
    x = as_points(x)
    h = JACOBIAN_STEP * (1.0 + np.sqrt(norm_sq(x)))
    cols = []
    for j in range(2):
        e = np.zeros(2)
        e[j] = 1.0
        step = h[..., None] * e
        cols.append((np.asarray(fun(x + step)) - np.asarray(fun(x - step))) / (2 * h[..., None]))
    return np.stack(cols, axis=-1)


def map_eval(chart: ChartMap, x):
    return chart.eval(chart._check(x))


def pullback(chart: ChartMap, ambient, x, xi, numeric_jacobian=False):
    """``ambient(chart(x), J(x) xi)``; the closed Jacobian is used when available."""
    x = chart._check(x)
    jac = chart.jacobian(x, numeric=numeric_jacobian)
    vec = np.einsum("...ij,...j->...i", jac, as_points(xi))
    return scalar_or_array(ambient(chart.eval(x), vec))


def pullback_field(chart: ChartMap, ambient, name=None, numeric_jacobian=False) -> MetricField:
    return MetricField(
        eval=lambda x, xi: pullback(chart, ambient, x, xi, numeric_jacobian),
        domain=chart.domain,
        name=name or f"{chart.name}*{getattr(ambient, 'name', 'F')}",
    )


# -- maps ---------------------------------------------------------------------


def _f(x):
    return 2.0 * x / (1.0 + norm_sq(x))[..., None]


def _f_jac(x):
    n = 1.0 + norm_sq(x)
    x1, x2 = x[..., 0], x[..., 1]
    jac = np.empty(x.shape[:-1] + (2, 2))
    jac[..., 0, 0] = n - 2 * x1 * x1
    jac[..., 0, 1] = jac[..., 1, 0] = -2 * x1 * x2
    jac[..., 1, 1] = n - 2 * x2 * x2
    return jac * (2.0 / n**2)[..., None, None]


def _g(x):
    x1, x2 = x[..., 0], x[..., 1]
    return np.stack([2 * x2 / (1 + x1), 2 * np.sqrt(1 - norm_sq(x)) / (1 + x1)], axis=-1)


def _g_jac(x):
    x1, x2 = x[..., 0], x[..., 1]
    s = np.sqrt(1 - norm_sq(x))
    p = 1 + x1
    jac = np.empty(x.shape[:-1] + (2, 2))
    jac[..., 0, 0] = -2 * x2 / p**2
    jac[..., 0, 1] = 2 / p
    jac[..., 1, 0] = -2 * x1 / (s * p) - 2 * s / p**2
    jac[..., 1, 1] = -2 * x2 / (s * p)
    return jac


def _g_inv(x):
    n = norm_sq(x)
    return np.stack([(4 - n) / (4 + n), 4 * x[..., 0] / (4 + n)], axis=-1)


def _g_inv_jac(x):
    n = 4 + norm_sq(x)
    x1, x2 = x[..., 0], x[..., 1]
    jac = np.empty(x.shape[:-1] + (2, 2))
    jac[..., 0, 0] = -4 * x1
    jac[..., 0, 1] = -4 * x2
    jac[..., 1, 0] = n - 2 * x1 * x1
    jac[..., 1, 1] = -2 * x1 * x2
    return jac * (4.0 / n**2)[..., None, None]


def _eta(x):
    w = np.sqrt(R * R - norm_sq(x))[..., None]
    return np.concatenate([x, np.full_like(w, R)], axis=-1) / w


def _eta_jac(x):
    gap = R * R - norm_sq(x)
    x1, x2 = x[..., 0], x[..., 1]
    jac = np.empty(x.shape[:-1] + (3, 2))
    jac[..., 0, 0] = gap + x1 * x1
    jac[..., 0, 1] = jac[..., 1, 0] = x1 * x2
    jac[..., 1, 1] = gap + x2 * x2
    jac[..., 2, 0] = R * x1
    jac[..., 2, 1] = R * x2
    return jac / (gap**1.5)[..., None, None]


def _psi(x):
    return np.concatenate([x, np.sqrt(R * R - norm_sq(x))[..., None]], axis=-1)


def _psi_jac(x):
    w = np.sqrt(R * R - norm_sq(x))
    jac = np.zeros(x.shape[:-1] + (3, 2))
    jac[..., 0, 0] = jac[..., 1, 1] = 1.0
    jac[..., 2, 0] = -x[..., 0] / w
    jac[..., 2, 1] = -x[..., 1] / w
    return jac


def _upper_half(x):
    return as_points(x)[..., 1] > 0


POINCARE_TO_KLEIN = ChartMap("f", 2, _f, lambda x: in_disc(x, 1.0), _f_jac)
KLEIN_TO_UPPER = ChartMap("g", 2, _g, lambda x: in_disc(x, 1.0), _g_jac)
UPPER_TO_KLEIN = ChartMap("g_inv", 2, _g_inv, _upper_half, _g_inv_jac)
HYPERBOLOID = ChartMap("eta", 3, _eta, lambda x: in_disc(x, R), _eta_jac)
HEMISPHERE = ChartMap("psi", 3, _psi, lambda x: in_disc(x, R), _psi_jac)
IDENTITY = ChartMap("id", 2, lambda x: as_points(x), lambda x: np.ones(np.shape(x)[:-1], bool), lambda x: np.broadcast_to(np.eye(2), np.shape(x)[:-1] + (2, 2)))


# -- ambient metrics ----------------------------------------------------------


def lorentz_randers(point, vec):
    """Lorentz-Randers function ``sqrt(v1^2 + v2^2 - v3^2) + beta_L(v)``.

    Raises :class:`LorentzSignature` where the quadratic form is negative
    beyond rounding (1e-12 relative to the Euclidean size of ``vec``).
    """
    q = vec[..., 0] ** 2 + vec[..., 1] ** 2 - vec[..., 2] ** 2
    if np.any(q < -1e-12 * np.maximum(norm_sq(vec) + vec[..., 2] ** 2, 1e-300)):
        raise LorentzSignature("alpha_L^2 < 0: vector is timelike for the Lorentzian form")
    t = point[..., 2]
    coef = 1.0 - R * R / (t * t - R * R * (point[..., 0] ** 2 + point[..., 1] ** 2))
    return np.sqrt(np.maximum(q, 0.0)) + coef * vec[..., 2] / t


def hemisphere_randers(point, vec):
    """``|v| / x3 + b(x) v3`` with ``b = (|x|^2 - 1) / (x3 (1 - x1^2 - x2^2))``."""
    t = point[..., 2]
    planar = point[..., 0] ** 2 + point[..., 1] ** 2
    b = (planar + t * t - 1.0) / (t * (1.0 - planar))
    return np.sqrt(np.sum(vec**2, axis=-1)) / t + b * vec[..., 2]


LORENTZ_RANDERS = AmbientMetric("F_L", lorentz_randers, "lorentzian-randers", lambda p: p[..., 2] > 0)
HEMISPHERE_RANDERS = AmbientMetric(
    "F_+",
    hemisphere_randers,
    "riemannian-randers",
    lambda p: (p[..., 2] > 0) & (p[..., 0] ** 2 + p[..., 1] ** 2 < 1),
)


def poincare_norm(x, xi):
    """Riemannian Poincare disc norm ``2|xi| / (1 - |x|^2)``."""
    x = require_in_disc(x, 1.0, label="Poincare disc")
    return scalar_or_array(2.0 * np.sqrt(norm_sq(as_points(xi))) / (1.0 - norm_sq(x)))


def upper_half_norm(x, xi):
    """Riemannian upper half-plane norm ``|xi| / x^2``."""
    x = as_points(x)
    if np.any(x[..., 1] <= 0):
        raise OutOfDomain("upper half-plane requires x^2 > 0")
    return scalar_or_array(np.sqrt(norm_sq(as_points(xi))) / x[..., 1])


POINCARE = MetricField(poincare_norm, lambda x: in_disc(x, 1.0), "poincare")
UPPER_HALF = MetricField(upper_half_norm, _upper_half, "upper-half")


# -- Funk metric on other models ----------------------------------------------


def _poincare_inside(x):
    return require_in_disc(x, R_POINCARE, label="Poincare unit disc |x| < tanh(1/2)")


def _upper_inside(x):
    return require_in_disc(x, R_UPPER, UPPER_CENTER, label="upper half-plane unit disc about (0, 2)")


def funk_poincare_parts(x, xi):
    x = _poincare_inside(x)
    xi = as_points(xi)
    n2 = norm_sq(x)
    v2 = norm_sq(xi)
    xv = dot(x, xi)
    den = (1 - n2) ** 2 - S * (1 + n2) ** 2
    alpha = 2 * np.sqrt((1 - n2) ** 2 * v2 - S * ((1 + n2) ** 2 * v2 - 4 * xv**2)) / den
    beta = 4 * S * (1 + n2) * xv / ((1 - n2) * den)
    return scalar_or_array(alpha), scalar_or_array(beta)


def funk_poincare(x, xi):
    """Closed form of the Funk metric on the Poincare unit disc ``|x| < tanh(1/2)``."""
    alpha, beta = funk_poincare_parts(x, xi)
    return scalar_or_array(np.asarray(alpha) + np.asarray(beta))


def funk_poincare_pullback(x, xi, numeric_jacobian=False):
    _poincare_inside(x)
    return pullback(POINCARE_TO_KLEIN, FUNK_AMBIENT, x, xi, numeric_jacobian)


def funk_upper_parts(x, xi):
    """Published closed form of (alpha_U, beta_U), reproduced verbatim."""
    x = _upper_inside(x)
    xi = as_points(xi)
    x1, x2 = x[..., 0], x[..., 1]
    n = norm_sq(x)
    v2 = norm_sq(xi)
    xv = dot(x, xi)
    lin = (4 + n) * xi[..., 0] - 2 * x1 * xv
    alpha = 4 * np.sqrt(16 * x2**2 * v2 - S * (16 * xv**2 + lin**2)) / (16 * x2**2 - S * (4 + n) ** 2)
    bracket = x1 * xi[..., 0] * (4 + n) - (4 - n + 2 * x1**2) * xv
    beta = S * (4 + n) * bracket / (x2**2 * (16 * x2**2 - S * (4 + n)))
    return scalar_or_array(alpha), scalar_or_array(beta)


def funk_upper(x, xi):
    """Published closed form of the Funk metric on the upper half-plane unit disc.

    Its 1-form part disagrees with :func:`funk_upper_pullback`; compare the
    two with :func:`funkfinsler.diagnostics.typo_ledger`.
    """
    alpha, beta = funk_upper_parts(x, xi)
    return scalar_or_array(np.asarray(alpha) + np.asarray(beta))


def funk_upper_pullback(x, xi, numeric_jacobian=False):
    """Funk metric on the upper half-plane unit disc as ``(g^-1)^* F``."""
    _upper_inside(x)
    return pullback(UPPER_TO_KLEIN, FUNK_AMBIENT, x, xi, numeric_jacobian)


def funk_upper_pullback_parts(x, xi):
    x = _upper_inside(x)
    y = _g_inv(x)
    v = np.einsum("...ij,...j->...i", _g_inv_jac(x), as_points(xi))
    return alpha_beta(y, v)


FUNK_AMBIENT = AmbientMetric("F", lambda p, v: funk_metric(p, v), "riemannian-randers", lambda p: in_disc(p, R))

FUNK_POINCARE = MetricField(funk_poincare, lambda x: in_disc(x, R_POINCARE), "poincare-funk")
FUNK_UPPER = MetricField(funk_upper_pullback, lambda x: in_disc(x, R_UPPER, UPPER_CENTER), "upper-funk")
FUNK_UPPER_PRINTED = MetricField(funk_upper, lambda x: in_disc(x, R_UPPER, UPPER_CENTER), "upper-funk-printed")


def isometry_check(
    chart: ChartMap,
    src,
    dst,
    samples=100,
    *,
    radius: float,
    center=(0.0, 0.0),
    seed: int = 42,
    numeric_jacobian: bool = True,
) -> float:
    """Max relative error of ``dst(chart(x), J xi)`` against ``src(x, xi)``.

    Base points are drawn uniformly from the disc of the given ``radius``
    and ``center`` (shrunk by the boundary margin).
    """
    rng = np.random.default_rng(seed)
    x, xi = sample_tangent(rng, samples, radius - 10 * BOUNDARY_MARGIN, center)
    ref = np.asarray(src(x, xi))
    got = np.asarray(pullback(chart, dst, x, xi, numeric_jacobian))
    return float(np.max(np.abs(got - ref) / ref))
