"""Funk and Hilbert geometry of Euclidean discs."""

from dataclasses import dataclass

import numpy as np

from .core import (
    BOUNDARY_MARGIN,
    MetricField,
    as_points,
    dot,
    in_disc,
    norm_sq,
    require_in_disc,
    require_nonzero,
    scalar_or_array,
)

#: Distances collapse to exactly zero below this point separation.
COINCIDENCE_TOL = 1e-14


@dataclass(frozen=True)
class EuclideanDisc:
    radius: float
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"disc radius must be positive, got {self.radius}")

    def contains(self, x, margin=BOUNDARY_MARGIN):
        return in_disc(x, self.radius, self.center, margin)

    def require(self, x):
        return require_in_disc(x, self.radius, self.center, label="Euclidean disc")


def _exit_parameter(disc, x, xi):
    # positive root t of |x - c + t xi|^2 = R^2, for x strictly inside
    p = as_points(x) - np.asarray(disc.center, dtype=float)
    xi = as_points(xi)
    aa = norm_sq(xi)
    bb = dot(p, xi)
    cc = disc.radius**2 - norm_sq(p)
    root = np.sqrt(bb * bb + aa * cc)
    # cancellation-free form of (-bb + root) / aa
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(bb > 0, cc / (bb + root), (root - bb) / np.where(aa > 0, aa, 1.0))


def ray_boundary_hit(disc: EuclideanDisc, x, xi):
    """Point where the ray ``x + t xi`` (t > 0) leaves the disc."""
    x = disc.require(x)
    xi = require_nonzero(xi)
    t = _exit_parameter(disc, x, xi)
    return x + np.asarray(t)[..., None] * xi


def funk_finsler_disc(disc: EuclideanDisc, x, xi):
    """Funk-Finsler norm of the disc: the least ``t > 0`` with ``x + xi/t`` in the disc.

    Returns 0 for ``xi = 0``.
    """
    x = disc.require(x)
    xi = as_points(xi)
    p = x - np.asarray(disc.center, dtype=float)
    gap = disc.radius**2 - norm_sq(p)
    px = dot(p, xi)
    root = np.sqrt(gap * norm_sq(xi) + px * px)
    return scalar_or_array((root + px) / gap)


def disc_funk_field(disc: EuclideanDisc) -> MetricField:
    return MetricField(
        eval=lambda x, xi: funk_finsler_disc(disc, x, xi),
        domain=disc.contains,
        name=f"funk[D({disc.radius:.6g})]",
    )


def disc_hilbert_field(disc: EuclideanDisc) -> MetricField:
    """Hilbert norm of the disc, the symmetrization of its Funk norm."""

    def hilbert(x, xi):
        xi = as_points(xi)
        return 0.5 * (np.asarray(funk_finsler_disc(disc, x, xi)) + np.asarray(funk_finsler_disc(disc, x, -xi)))

    return MetricField(eval=hilbert, domain=disc.contains, name=f"hilbert[D({disc.radius:.6g})]")


def _pair(disc, x, y):
    x = disc.require(x)
    y = disc.require(y)
    x, y = np.broadcast_arrays(x, y)
    same = np.sqrt(norm_sq(y - x)) < COINCIDENCE_TOL
    # any direction works for coincident points; the result is masked to 0
    direction = np.where(same[..., None], np.array([1.0, 0.0]), y - x)
    return x, y, same, direction


def funk_distance_disc(disc: EuclideanDisc, x, y):
    """Funk distance ``log(|x - m| / |y - m|)`` with ``m`` the exit point of ray x->y."""
    x, y, same, direction = _pair(disc, x, y)
    m = x + _exit_parameter(disc, x, direction)[..., None] * direction
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.log(np.sqrt(norm_sq(x - m)) / np.sqrt(norm_sq(y - m)))
    return scalar_or_array(np.where(same, 0.0, d))


def hilbert_distance_disc(disc: EuclideanDisc, x, y):
    """Hilbert (cross-ratio) distance; symmetric in ``x`` and ``y``."""
    x, y, same, direction = _pair(disc, x, y)
    m = x + _exit_parameter(disc, x, direction)[..., None] * direction
    mbar = y + _exit_parameter(disc, y, -direction)[..., None] * (-direction)
    dist = lambda u, v: np.sqrt(norm_sq(u - v))  # noqa: E731
    with np.errstate(divide="ignore", invalid="ignore"):
        d = 0.5 * np.log(dist(y, mbar) * dist(x, m) / (dist(x, mbar) * dist(y, m)))
    return scalar_or_array(np.where(same, 0.0, d))
