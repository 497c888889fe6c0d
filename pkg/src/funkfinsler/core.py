"""Generic Finsler-metric machinery.

A :class:`MetricField` is a vectorized callable ``F(x, xi)`` on arrays of
shape ``(..., 2)``. Everything numeric in this package (fundamental tensor,
sprays, curvature oracles) is written against that interface so the same
code can check closed forms and pullback-defined metrics alike.
"""

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import OutOfDomain, ZeroVector

#: Points closer than this to a disc boundary are rejected.
BOUNDARY_MARGIN = 1e-9


def as_points(x):
    return np.asarray(x, dtype=float)


def scalar_or_array(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def dot(u, v):
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1]


def norm_sq(u):
    return dot(u, u)


def require_in_disc(x, radius, center=(0.0, 0.0), margin=BOUNDARY_MARGIN, label="disc"):
    """Raise :class:`OutOfDomain` unless every point is inside the disc by ``margin``."""
    x = as_points(x)
    dist = np.sqrt(norm_sq(x - np.asarray(center, dtype=float)))
    if np.any(~(radius - dist >= margin)):
        raise OutOfDomain(
            f"point(s) outside {label} of radius {radius:.15g} centred at "
            f"{tuple(center)} (margin {margin:g})"
        )
    return x


def require_nonzero(xi):
    xi = as_points(xi)
    if np.any(norm_sq(xi) == 0.0):
        raise ZeroVector("tangent vector must be nonzero")
    return xi


def in_disc(x, radius, center=(0.0, 0.0), margin=BOUNDARY_MARGIN):
    x = as_points(x)
    return radius - np.sqrt(norm_sq(x - np.asarray(center, dtype=float))) >= margin


def sample_tangent(rng, n, radius, center=(0.0, 0.0), *, min_norm=0.05):
    """Draw ``n`` base points uniformly from a disc and Gaussian tangent vectors.

    Vectors shorter than ``min_norm`` are rescaled so that no sample is
    numerically close to the zero section.
    """
    theta = rng.uniform(0.0, 2 * np.pi, n)
    rad = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    x = np.stack([rad * np.cos(theta), rad * np.sin(theta)], axis=-1) + np.asarray(center, dtype=float)
    xi = rng.normal(size=(n, 2))
    lengths = np.linalg.norm(xi, axis=-1, keepdims=True)
    xi = np.where(lengths < min_norm, xi / lengths * min_norm, xi)
    return x, xi


def clearance(domain: Callable, x, cap: float = 1.0, directions: int = 8, iters: int = 40):
    """Euclidean distance from ``x`` to the edge of ``domain``, capped at ``cap``.

    Bisection of the domain predicate along ``directions`` evenly spaced
    rays; the minimum over rays is returned. Finite-difference steps in the
    base point scale with it so that stencils stay inside the domain and
    resolve the blow-up of metrics near the boundary.
    """
    x = as_points(x)
    angles = 2 * np.pi * np.arange(directions) / directions
    best = np.full(x.shape[:-1], float(cap))
    for th in angles:
        e = np.array([np.cos(th), np.sin(th)])
        inside = np.asarray(domain(x + cap * e), dtype=bool)
        lo = np.where(inside, cap, 0.0)
        hi = np.full_like(lo, cap)
        for _ in range(iters):
            if np.all(inside):
                break
            mid = 0.5 * (lo + hi)
            ok = np.asarray(domain(x + mid[..., None] * e), dtype=bool)
            lo = np.where(ok, mid, lo)
            hi = np.where(ok, hi, mid)
        best = np.minimum(best, lo)
    return best


@dataclass(frozen=True)
class MetricField:
    """A Finsler function ``F(x, xi)`` together with its domain predicate.

    ``eval`` must broadcast over leading axes of ``x`` and ``xi`` and
    ``domain`` must return a boolean array of the leading shape of ``x``.
    """

    eval: Callable
    domain: Callable
    name: str = "F"

    def __call__(self, x, xi):
        return self.eval(x, xi)


@dataclass(frozen=True)
class RandersData:
    """Pointwise data of a Randers norm ``sqrt(xi^T a xi) + b.xi``.

    Arrays may carry leading batch axes: ``a`` and ``a_inv`` have shape
    ``(..., 2, 2)``, ``b`` has shape ``(..., 2)``.
    """

    a: np.ndarray
    a_inv: np.ndarray
    b: np.ndarray
    beta_norm_sq: np.ndarray

    @classmethod
    def from_forms(cls, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        a_inv = np.linalg.inv(a)
        beta = np.einsum("...i,...ij,...j->...", b, a_inv, b)
        return cls(a, a_inv, b, beta)

    def alpha(self, xi):
        xi = as_points(xi)
        return np.sqrt(np.einsum("...i,...ij,...j->...", xi, self.a, xi))

    def beta(self, xi):
        return dot(self.b, as_points(xi))


@dataclass(frozen=True)
class FundamentalTensor:
    g: np.ndarray
    eigenvalues: tuple = field(default=())

    @property
    def spd(self):
        return bool(min(self.eigenvalues) > 0.0)


def randers_eval(data: RandersData, xi):
    """Evaluate ``alpha(xi) + beta(xi)`` for the given Randers data."""
    return scalar_or_array(data.alpha(xi) + data.beta(xi))


def bh_density(data: RandersData, n: int = 2):
    """Busemann-Hausdorff volume density of a Randers metric in coordinates.

    ``(1 - ||beta||_alpha^2)^((n+1)/2) * sqrt(det a)``.
    """
    det = np.linalg.det(np.asarray(data.a, dtype=float))
    return scalar_or_array((1.0 - np.asarray(data.beta_norm_sq)) ** ((n + 1) / 2) * np.sqrt(det))


def eig_sym2(g):
    """Eigenvalues of a symmetric 2x2 matrix, smallest first."""
    half_tr = 0.5 * (g[..., 0, 0] + g[..., 1, 1])
    det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] * g[..., 1, 0]
    disc = np.sqrt(np.maximum(half_tr**2 - det, 0.0))
    return half_tr - disc, half_tr + disc


def _check_point(F, x, xi):
    x = as_points(x)
    xi = require_nonzero(xi)
    if not np.all(F.domain(x)):
        raise OutOfDomain(f"{F.name}: base point outside the metric's domain")
    return x, xi


def fundamental_tensor(F: MetricField, x, xi, step=None) -> FundamentalTensor:
    """Numeric ``g_ij = (1/2) d^2 F^2 / d xi^i d xi^j`` at a single ``(x, xi)``.

    Uses the 3x3 central stencil with ``h = max(1e-4, 1e-4 |xi|)`` unless
    ``step`` is given. The result is symmetrized.
    """
    x, xi = _check_point(F, x, xi)
    h = step if step is not None else max(1e-4, 1e-4 * float(np.linalg.norm(xi)))
    offsets = np.array([(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)], dtype=float)
    vals = 0.5 * np.asarray(F(np.broadcast_to(x, (9, 2)), xi + h * offsets)) ** 2
    f = vals.reshape(3, 3)
    g11 = (f[2, 1] - 2 * f[1, 1] + f[0, 1]) / h**2
    g22 = (f[1, 2] - 2 * f[1, 1] + f[1, 0]) / h**2
    g12 = (f[2, 2] - f[2, 0] - f[0, 2] + f[0, 0]) / (4 * h**2)
    g = np.array([[g11, g12], [g12, g22]])
    lo, hi = eig_sym2(g)
    return FundamentalTensor(g, (float(lo), float(hi)))


def check_homogeneity(F: MetricField, x, xi, lambdas: Sequence[float] = (0.5, 2.0, 10.0)) -> float:
    """Maximum relative residual of ``F(x, l xi) = l F(x, xi)`` over ``lambdas``."""
    x, xi = _check_point(F, x, xi)
    base = np.asarray(F(x, xi), dtype=float)
    worst = 0.0
    for lam in lambdas:
        err = np.abs(np.asarray(F(x, lam * xi)) - lam * base) / (lam * base)
        worst = max(worst, float(np.max(err)))
    return worst


def _euclidean(x, xi):
    _, xi = np.broadcast_arrays(as_points(x), as_points(xi))
    return np.sqrt(norm_sq(xi))


def euclidean_field() -> MetricField:
    return MetricField(
        eval=_euclidean,
        domain=lambda x: np.ones(np.shape(x)[:-1], dtype=bool),
        name="euclidean",
    )
