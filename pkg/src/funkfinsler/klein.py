"""The Funk-Finsler metric on the Klein unit disc.

The Klein unit disc (points at Klein distance < 1 from the origin) is the
Euclidean disc of radius ``R = tanh(1)``. On it the Funk structure is the
Randers metric ``F = alpha + beta`` with

    alpha(x, xi) = sqrt((R^2 - |x|^2)|xi|^2 + <x, xi>^2) / (R^2 - |x|^2)
    beta(x, xi)  = (1 - R^2) <x, xi> / ((R^2 - |x|^2)(1 - |x|^2))

and ``beta = d f`` for ``f(x) = 1/2 log((1 - |x|^2) / (R^2 - |x|^2))``.
"""

import math

import numpy as np

from .core import (
    MetricField,
    RandersData,
    as_points,
    dot,
    in_disc,
    norm_sq,
    require_in_disc,
    require_nonzero,
    scalar_or_array,
)
from .disc import EuclideanDisc, hilbert_distance_disc, ray_boundary_hit

#: Euclidean radius of the Klein unit disc, (e^2 - 1)/(e^2 + 1).
R = math.tanh(1.0)
#: 1 - R^2, the recurring coupling constant of the Randers form.
S = 1.0 - R * R

UNIT_DISC = EuclideanDisc(1.0)
KLEIN_UNIT_DISC = EuclideanDisc(R)


def _inside(x):
    return require_in_disc(x, R, label="Klein unit disc |x| < tanh(1)")


def klein_distance(x, y):
    """Klein (Hilbert) distance on the Euclidean unit disc."""
    return hilbert_distance_disc(UNIT_DISC, x, y)


def klein_norm(x, xi):
    """Riemannian Klein norm of the unit disc."""
    x = require_in_disc(x, 1.0, label="unit disc")
    xi = as_points(xi)
    gap = 1.0 - norm_sq(x)
    return scalar_or_array(np.sqrt(gap * norm_sq(xi) + dot(x, xi) ** 2) / gap)


def alpha_beta(x, xi):
    """Riemannian part and 1-form part of the Funk metric, as a pair."""
    x = _inside(x)
    xi = as_points(xi)
    x2 = norm_sq(x)
    gap = R * R - x2
    xv = dot(x, xi)
    alpha = np.sqrt(gap * norm_sq(xi) + xv * xv) / gap
    beta = S * xv / (gap * (1.0 - x2))
    return scalar_or_array(alpha), scalar_or_array(beta)


def funk_metric(x, xi):
    """Closed Randers form of the Funk metric. ``F(x, 0) = 0``."""
    alpha, beta = alpha_beta(x, xi)
    return scalar_or_array(np.asarray(alpha) + np.asarray(beta))


def funk_metric_cothdef(x, xi):
    """The Funk metric as ``coth(d_K(x, a)) * ||xi||_K``.

    ``a`` is where the ray from ``x`` along ``xi`` crosses ``|x| = R``.
    Independent of the Randers closed form; used as its oracle.
    """
    x = _inside(x)
    xi = require_nonzero(xi)
    a = ray_boundary_hit(KLEIN_UNIT_DISC, x, xi)
    d = np.asarray(klein_distance(x, a))
    return scalar_or_array(np.asarray(klein_norm(x, xi)) / np.tanh(d))


def randers_data_at(x) -> RandersData:
    """Matrix ``a_ij``, its inverse, ``b_i`` and ``||beta||^2_alpha`` at ``x``."""
    x = _inside(x)
    x1, x2 = x[..., 0], x[..., 1]
    n2 = norm_sq(x)
    gap = R * R - n2
    a = np.empty(x.shape[:-1] + (2, 2))
    a[..., 0, 0] = gap + x1 * x1
    a[..., 0, 1] = a[..., 1, 0] = x1 * x2
    a[..., 1, 1] = gap + x2 * x2
    a /= (gap**2)[..., None, None]
    a_inv = np.empty_like(a)
    a_inv[..., 0, 0] = gap + x2 * x2
    a_inv[..., 0, 1] = a_inv[..., 1, 0] = -x1 * x2
    a_inv[..., 1, 1] = gap + x1 * x1
    a_inv *= (gap / (R * R))[..., None, None]
    b = (S / (gap * (1.0 - n2)))[..., None] * x
    beta_sq = n2 * S**2 / (R * R * (1.0 - n2) ** 2)
    return RandersData(a, a_inv, b, beta_sq)


def potential(x):
    """Potential ``f`` with ``df = beta``."""
    x = _inside(x)
    n2 = norm_sq(x)
    return scalar_or_array(0.5 * np.log((1.0 - n2) / (R * R - n2)))


def funk_distance(x, y):
    """Funk distance ``log(sinh d_K(x, a) / sinh d_K(y, a))``.

    ``a`` is the exit point of the ray from ``x`` through ``y`` on
    ``|x| = R``. Zero when the points coincide.
    """
    x = _inside(x)
    y = _inside(y)
    x, y = np.broadcast_arrays(x, y)
    same = np.sqrt(norm_sq(y - x)) < 1e-14
    direction = np.where(same[..., None], np.array([1.0, 0.0]), y - x)
    a = ray_boundary_hit(KLEIN_UNIT_DISC, x, direction)
    dx = np.asarray(klein_distance(x, a))
    dy = np.asarray(klein_distance(y, a))
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.log(np.sinh(dx) / np.sinh(dy))
    return scalar_or_array(np.where(same, 0.0, d))


def _domain(x):
    return in_disc(x, R)


def _unit_domain(x):
    return in_disc(x, 1.0)


FUNK = MetricField(eval=funk_metric, domain=_domain, name="klein-funk")
KLEIN = MetricField(eval=klein_norm, domain=_unit_domain, name="klein")
#: Riemannian part alpha_F alone (the Klein metric of the disc |x| < R).
ALPHA = MetricField(eval=lambda x, xi: alpha_beta(x, xi)[0], domain=_domain, name="klein-alpha")
