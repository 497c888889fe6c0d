"""Sprays, geodesic integration and curve lengths."""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import simpson

from . import _fd
from .core import MetricField, as_points, clearance, dot, norm_sq, require_in_disc, require_nonzero, scalar_or_array
from .errors import OutOfDomain, SingularTensor
from .klein import FUNK, R, S

#: Steps of the numeric spray: base-point step (a fraction of the point's
#: clearance from the domain edge) and relative fibre step.
SPRAY_X_STEP = 3e-3
SPRAY_XI_STEP = 1e-3


def klein_spray(x, xi, radius=1.0):
    """Spray of the Riemannian Klein metric of the disc ``|x| < radius``.

    ``G^i = xi^i <x, xi> / (radius^2 - |x|^2)``.
    """
    x = require_in_disc(x, radius)
    xi = as_points(xi)
    return xi * (dot(x, xi) / (radius**2 - norm_sq(x)))[..., None]


def spray_closed(x, xi):
    """Closed-form spray coefficients of the Funk metric on the Klein unit disc.

    Shape ``(..., 2)``. The Riemannian Klein part plus ``P xi`` with
    ``P = e_00 / (2F)``.
    """
    x = require_in_disc(x, R)
    xi = require_nonzero(xi)
    n2 = norm_sq(x)
    xv = dot(x, xi)
    F = np.asarray(FUNK(x, xi))
    inner = xv + S * ((1 - n2) * norm_sq(xi) + 2 * xv**2) / (2 * F * (1 - n2) ** 2)
    return xi * (inner / (R * R - n2))[..., None]


def _f2(F):
    return lambda z: np.asarray(F(z[..., :2], z[..., 2:]), dtype=float) ** 2


def spray_numeric(F: MetricField, x, xi, x_step=None):
    """Spray coefficients from ``G^i = 1/4 g^il ([F^2]_{x^k xi^l} xi^k - [F^2]_{x^l})``.

    Every derivative is a fourth-order central difference; broadcasts over
    leading axes. ``x_step`` defaults to ``SPRAY_X_STEP`` times the
    clearance of ``x`` in ``F.domain``.
    """
    x = as_points(x)
    xi = require_nonzero(xi)
    x, xi = np.broadcast_arrays(x, xi)
    hx = SPRAY_X_STEP * clearance(F.domain, x) if x_step is None else x_step
    z = np.concatenate([x, xi], axis=-1)
    f2 = _f2(F)
    speed = np.sqrt(norm_sq(xi))
    hv = SPRAY_XI_STEP * speed
    e = [_fd.unit(4, i) for i in range(4)]
    g = np.empty(x.shape[:-1] + (2, 2))
    for i in range(2):
        for j in range(i, 2):
            g[..., i, j] = g[..., j, i] = 0.5 * _fd.d2(f2, z, e[2 + i], hv, e[2 + j], hv)
    det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] ** 2
    if np.any(~(det > 1e-14 * (g[..., 0, 0] ** 2 + g[..., 1, 1] ** 2))):
        raise SingularTensor(f"{F.name}: fundamental tensor is numerically singular")
    # derivative in x along xi
    along = np.concatenate([xi / speed[..., None], np.zeros_like(xi)], axis=-1)
    rhs = np.empty(x.shape)
    for l in range(2):
        mixed = _fd.d2(f2, z, along, hx, e[2 + l], hv) * speed
        rhs[..., l] = mixed - _fd.d1(f2, z, e[l], hx)
    g_inv = np.stack(
        [np.stack([g[..., 1, 1], -g[..., 0, 1]], -1), np.stack([-g[..., 1, 0], g[..., 0, 0]], -1)], -2
    ) / det[..., None, None]
    return 0.25 * np.einsum("...il,...l->...i", g_inv, rhs)


@dataclass(frozen=True)
class GeodesicTrace:
    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    terminated_reason: str

    def __len__(self):
        return len(self.t)


def _rk4_step(spray, x, v, h):
    def rhs(x, v):
        return v, -2.0 * spray(x, v)

    k1x, k1v = rhs(x, v)
    k2x, k2v = rhs(x + 0.5 * h * k1x, v + 0.5 * h * k1v)
    k3x, k3v = rhs(x + 0.5 * h * k2x, v + 0.5 * h * k2v)
    k4x, k4v = rhs(x + h * k3x, v + h * k3v)
    return (
        x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x),
        v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v),
    )


def integrate_geodesics(
    F: MetricField,
    x0,
    v0,
    t_end: float,
    step: float = 1e-3,
    *,
    spray: Optional[Callable] = None,
    stop_radius: Optional[float] = None,
):
    """Fixed-step RK4 for ``x' = v, v' = -2 G(x, v)`` on a batch of initial data.

    A trace stops with ``left_domain`` before its first sample that is
    outside ``F.domain`` or has ``|x| >= stop_radius``. ``spray`` defaults
    to :func:`spray_numeric` of ``F``.
    """
    x = np.atleast_2d(as_points(x0)).copy()
    v = np.atleast_2d(require_nonzero(v0)).copy()
    x, v = np.broadcast_arrays(x, v)
    x, v = x.copy(), v.copy()
    if spray is None:
        spray = lambda p, q: spray_numeric(F, p, q)  # noqa: E731

    def admissible(p):
        ok = np.asarray(F.domain(p), dtype=bool)
        if stop_radius is not None:
            ok &= np.sqrt(norm_sq(p)) < stop_radius
        return ok

    if not np.all(admissible(x)):
        raise OutOfDomain("initial point outside the integration domain")

    n_steps = int(np.ceil(t_end / step - 1e-9))
    ts = [np.zeros(len(x))]
    xs, vs = [x.copy()], [v.copy()]
    active = np.ones(len(x), dtype=bool)
    last = np.zeros(len(x), dtype=int)
    for k in range(1, n_steps + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        h = min(step, t_end - (k - 1) * step)
        nx, nv = x.copy(), v.copy()
        try:
            nx[idx], nv[idx] = _rk4_step(spray, x[idx], v[idx], h)
        except OutOfDomain:
            # isolate the traces whose stages left the domain
            for i in idx:
                try:
                    nx[i], nv[i] = _rk4_step(spray, x[i : i + 1], v[i : i + 1], h)
                except OutOfDomain:
                    active[i] = False
            idx = np.flatnonzero(active)
        ok = admissible(nx[idx])
        active[idx[~ok]] = False
        idx = idx[ok]
        x[idx], v[idx] = nx[idx], nv[idx]
        last[idx] = k
        ts.append(np.full(len(x), (k - 1) * step + h))
        xs.append(x.copy())
        vs.append(v.copy())
    t_all, x_all, v_all = np.array(ts), np.array(xs), np.array(vs)
    traces = []
    for i in range(len(x)):
        m = last[i] + 1
        reason = "completed" if active[i] else "left_domain"
        traces.append(GeodesicTrace(t_all[:m, i], x_all[:m, i], v_all[:m, i], reason))
    return traces


def integrate_geodesic(F: MetricField, x0, v0, t_end: float, step: float = 1e-3, *, spray=None, stop_radius=None):
    """Single-trace version of :func:`integrate_geodesics`."""
    return integrate_geodesics(F, x0, v0, t_end, step, spray=spray, stop_radius=stop_radius)[0]


def collinearity_residual(trace: GeodesicTrace) -> float:
    """Max distance from the initial line over the trace's Euclidean arc length."""
    d = trace.v[0] / np.linalg.norm(trace.v[0])
    rel = trace.x - trace.x[0]
    perp = np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0])
    arc = np.sum(np.linalg.norm(np.diff(trace.x, axis=0), axis=-1))
    return float(perp.max() / arc) if arc > 0 else 0.0


def speed_drift(F: MetricField, trace: GeodesicTrace) -> float:
    """Max relative deviation of ``F(x(t), x'(t))`` from its initial value."""
    speeds = np.asarray(F(trace.x, trace.v))
    return float(np.max(np.abs(speeds - speeds[0])) / speeds[0])


def curve_length(F: MetricField, points, t=None, velocity=None):
    """Composite Simpson integral of ``F(sigma, sigma')`` over a sampled path.

    ``t`` defaults to a uniform grid on [0, 1]. Without ``velocity`` the
    tangent is taken by second-order differences (centred inside, one-sided
    at the ends).
    """
    points = as_points(points)
    if t is None:
        t = np.linspace(0.0, 1.0, len(points))
    if not np.all(F.domain(points)):
        raise OutOfDomain(f"{F.name}: path leaves the metric's domain")
    if velocity is None:
        velocity = np.gradient(points, t, axis=0, edge_order=2)
    integrand = np.asarray(F(points, velocity), dtype=float)
    return float(simpson(integrand, x=t))


def segment_length(F: MetricField, x, y, n: int = 20001):
    """Length of the straight segment ``x -> y`` using its exact tangent."""
    x, y = as_points(x), as_points(y)
    t = np.linspace(0.0, 1.0, n)
    points = x + t[:, None] * (y - x)
    return curve_length(F, points, t, np.broadcast_to(y - x, points.shape))


def path_length(F: MetricField, vertices, n_per_leg: int = 20001):
    """Length of a polyline, integrating each leg separately."""
    vertices = as_points(vertices)
    return scalar_or_array(sum(segment_length(F, a, b, n_per_leg) for a, b in zip(vertices[:-1], vertices[1:])))
