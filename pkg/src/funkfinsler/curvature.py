"""Curvature of the Funk metric on the Klein unit disc.

Closed forms (covariant derivative of the 1-form, S-curvature, Riemann,
Ricci and flag curvature) next to generic numeric oracles that only need
a :class:`~funkfinsler.core.MetricField`.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _fd
from .core import MetricField, as_points, bh_density, clearance, dot, norm_sq, require_in_disc, require_nonzero, scalar_or_array
from . import geodesics
from .geodesics import spray_numeric
from .klein import FUNK, R, S, alpha_beta, randers_data_at

#: Base-point steps are fractions of the clearance from the domain edge;
#: fibre steps are relative to |xi|.
RIEMANN_X_STEP = 2e-2
RIEMANN_XI_STEP = 3e-2
S_XI_STEP = 1e-2
S_X_STEP = 1e-3


@dataclass(frozen=True)
class CovariantData:
    """Christoffel symbols ``Gamma[k, i, j]`` of alpha and ``db[i, j] = b_{i|j}``."""

    Gamma: np.ndarray
    db: np.ndarray

    @property
    def s(self):
        """Antisymmetric part ``s_ij`` of ``b_{i|j}``."""
        return 0.5 * (self.db - np.swapaxes(self.db, -1, -2))

    @property
    def r(self):
        return 0.5 * (self.db + np.swapaxes(self.db, -1, -2))

    def e00(self, xi):
        # s_ij = 0, so e_ij = r_ij
        xi = as_points(xi)
        return np.einsum("...i,...ij,...j->...", xi, self.r, xi)


@dataclass(frozen=True)
class CurvatureReport:
    S: float
    R: np.ndarray
    Ric: float
    K: float
    phi: float
    psi: float
    tau: np.ndarray


def christoffel(x):
    """``Gamma^k_ij = (x^i delta_kj + x^j delta_ki) / (R^2 - |x|^2)``, indexed ``[k, i, j]``."""
    x = require_in_disc(x, R)
    eye = np.eye(2)
    gap = R * R - norm_sq(x)
    gam = np.einsum("...i,kj->...kij", x, eye) + np.einsum("...j,ki->...kij", x, eye)
    return gam / gap[..., None, None, None]


def covariant_data(x) -> CovariantData:
    x = require_in_disc(x, R)
    n2 = norm_sq(x)
    scale = S / ((R * R - n2) * (1 - n2))
    outer = np.einsum("...i,...j->...ij", x, x)
    db = scale[..., None, None] * (np.eye(2) + 2 * outer / (1 - n2)[..., None, None])
    return CovariantData(christoffel(x), db)


def s_curvature_closed(x, xi):
    """S-curvature (Busemann-Hausdorff volume) of the Funk metric.

    ``S = 3 [e_00 / (2F) - rho_0]`` with ``rho = log sqrt(1 - ||beta||^2)``;
    the second term evaluates to
    ``+3 <x,xi> (1-R^2)^2 (1+|x|^2) / ((R^2-|x|^2)(1-R^2|x|^2)(1-|x|^2))``.
    """
    x = require_in_disc(x, R)
    xi = require_nonzero(xi)
    return scalar_or_array(_s_terms(x, xi, +1.0))


def s_curvature_printed(x, xi):
    """The published S-curvature expression, whose second term has the opposite sign."""
    x = require_in_disc(x, R)
    xi = require_nonzero(xi)
    return scalar_or_array(_s_terms(x, xi, -1.0))


def _s_terms(x, xi, sign):
    n2 = norm_sq(x)
    xv = dot(x, xi)
    F = np.asarray(FUNK(x, xi))
    first = 3 * S * ((1 - n2) * norm_sq(xi) + 2 * xv**2) / (2 * F * (R * R - n2) * (1 - n2) ** 2)
    second = 3 * xv * S**2 * (1 + n2) / ((R * R - n2) * (1 - R * R * n2) * (1 - n2))
    return first + sign * second


def _default_spray(F, spray, room):
    # numeric spray whose base-point step is frozen at the centre of the stencil
    if spray is not None:
        return spray
    step = geodesics.SPRAY_X_STEP * room
    return lambda p, q: spray_numeric(F, p, q, x_step=step)


def funk_bh_density(x):
    """Busemann-Hausdorff density of the Funk metric in Klein coordinates."""
    return bh_density(randers_data_at(x))


def s_curvature_numeric(F: MetricField, density: Callable, x, xi, spray: Optional[Callable] = None):
    """``S = dG^m/dxi^m - xi^m d(log sigma)/dx^m`` by central differences.

    ``spray`` defaults to :func:`~funkfinsler.geodesics.spray_numeric` of ``F``.
    """
    x = as_points(x)
    xi = require_nonzero(xi)
    x, xi = np.broadcast_arrays(x, xi)
    room = clearance(F.domain, x)
    spray = _default_spray(F, spray, room)
    z = np.concatenate([x, xi], axis=-1)
    G = lambda z: spray(z[..., :2], z[..., 2:])  # noqa: E731
    speed = np.sqrt(norm_sq(xi))
    div = 0.0
    for m in range(2):
        div = div + _fd.d1(G, z, _fd.unit(4, 2 + m), S_XI_STEP * speed)[..., m]
    log_density = lambda p: np.log(np.asarray(density(p)))  # noqa: E731
    hx = S_X_STEP * room
    transport = _fd.d1(log_density, x, xi / speed[..., None], hx) * speed
    return scalar_or_array(div - transport)


def _phi_psi_tau(x, xi, F):
    n2 = norm_sq(x)
    xv = dot(x, xi)
    v2 = norm_sq(xi)
    gap = R * R - n2
    phi = S * ((1 - n2) * v2 + 2 * xv**2) / (gap * (1 - n2) ** 2)
    psi = (
        2 * S * xv / ((1 - n2) ** 3 * gap**2)
        * ((1 - n2) * v2 * (3 * R * R - 2 * n2 - 1) - 2 * xv**2 * (1 + n2 - 2 * R * R))
    )
    # x|xi|^2 - xi<x,xi> = (x^1 xi^2 - x^2 xi^1)(xi^2, -xi^1) in the plane; this form keeps tau.xi = 0 to rounding
    wedge = x[..., 0] * xi[..., 1] - x[..., 1] * xi[..., 0]
    perp = np.stack([xi[..., 1], -xi[..., 0]], axis=-1)
    tau = perp * (S * wedge / (F * gap**2 * (1 - n2)))[..., None]
    return phi, psi, tau


def riemann_closed(x, xi, riemannian: bool = False) -> CurvatureReport:
    """Closed Riemann/Ricci/flag curvature of the Funk metric at ``(x, xi)``.

    With ``riemannian=True`` the 1-form is dropped and the report is that
    of the Klein metric ``alpha`` alone (flag curvature -1).
    """
    x = require_in_disc(x, R)
    xi = require_nonzero(xi)
    data = randers_data_at(x)
    alpha, beta = (np.asarray(v) for v in alpha_beta(x, xi))
    a_xi = np.einsum("...ij,...j->...i", data.a, xi)
    d_alpha = a_xi / alpha[..., None]
    if riemannian:
        F = alpha
        d_F = d_alpha
        phi = psi = np.zeros_like(alpha)
        tau = np.zeros_like(xi)
        s_val = np.zeros_like(alpha)
    else:
        F = alpha + beta
        d_F = d_alpha + data.b
        phi, psi, tau = _phi_psi_tau(x, xi, F)
        s_val = _s_terms(x, xi, +1.0)
    c = 3 * (phi / (2 * F)) ** 2 - psi / (2 * F)
    eye = np.eye(2)
    # R[i, k]; xi^i carries the row index
    outer = lambda u, w: np.einsum("...i,...k->...ik", u, w)  # noqa: E731
    Rm = (
        -(eye * (alpha**2)[..., None, None] - alpha[..., None, None] * outer(xi, d_alpha))
        + c[..., None, None] * (eye - outer(xi, d_F) / F[..., None, None])
        + outer(xi, tau)
    )
    ric = c - alpha**2
    return CurvatureReport(
        S=scalar_or_array(s_val),
        R=Rm,
        Ric=scalar_or_array(ric),
        K=scalar_or_array(ric / F**2),
        phi=scalar_or_array(phi),
        psi=scalar_or_array(psi),
        tau=tau,
    )


def riemann_numeric(F: MetricField, x, xi, spray: Optional[Callable] = None):
    """``R^i_k`` from the spray by central differences.

    ``R^i_k = 2 dG^i/dx^k - xi^j d2G^i/dx^j dxi^k + 2 G^j d2G^i/dxi^j dxi^k
    - dG^i/dxi^j dG^j/dxi^k``. Returns shape ``(..., 2, 2)``.
    """
    x = as_points(x)
    xi = require_nonzero(xi)
    x, xi = np.broadcast_arrays(x, xi)
    room = clearance(F.domain, x)
    spray = _default_spray(F, spray, room)
    z = np.concatenate([x, xi], axis=-1)
    G = lambda z: spray(z[..., :2], z[..., 2:])  # noqa: E731
    speed = np.sqrt(norm_sq(xi))
    hv = RIEMANN_XI_STEP * speed
    hx = RIEMANN_X_STEP * room
    e = [_fd.unit(4, i) for i in range(4)]
    along = np.concatenate([xi / speed[..., None], np.zeros_like(xi)], axis=-1)
    G0 = G(z)
    dx = np.stack([_fd.d1(G, z, e[k], hx) for k in range(2)], axis=-1)
    dv = np.stack([_fd.d1(G, z, e[2 + k], hv) for k in range(2)], axis=-1)
    xv = np.stack([_fd.d2(G, z, along, hx, e[2 + k], hv) * speed[..., None] for k in range(2)], axis=-1)
    vv = np.empty(x.shape[:-1] + (2, 2, 2))
    for j in range(2):
        for k in range(j, 2):
            vv[..., j, k] = vv[..., k, j] = _fd.d2(G, z, e[2 + j], hv, e[2 + k], hv)
    return (
        2 * dx
        - xv
        + 2 * np.einsum("...j,...ijk->...ik", G0, vv)
        - np.einsum("...ij,...jk->...ik", dv, dv)
    )


def flag_numeric(F: MetricField, x, xi, spray: Optional[Callable] = None):
    """Flag curvature ``trace(R) / F^2`` from :func:`riemann_numeric` (dimension two)."""
    Rm = riemann_numeric(F, x, xi, spray)
    return scalar_or_array(np.trace(Rm, axis1=-2, axis2=-1) / np.asarray(F(x, xi)) ** 2)


def classify(x, tol: float = 1e-10):
    """Douglas (``s_ij = 0``) and Berwald (``b_{i|j} = 0``) tests at ``x``."""
    data = covariant_data(x)
    return {
        "douglas": bool(np.max(np.abs(data.s)) <= tol),
        "berwald": bool(np.max(np.abs(data.db)) <= tol),
    }
