"""Zermelo navigation data ``(h, W)`` of the Funk metric and the inverse solve.

A Randers metric ``alpha + beta`` is the travel-time metric of a sea
``h = eps (a - b b)`` with wind ``W = -b^sharp / eps``, ``eps = 1 - ||beta||^2``:
``F`` is the positive solution of ``||xi/F - W||_h = 1``.
"""

from dataclasses import dataclass

import numpy as np

from .core import as_points, norm_sq, require_in_disc, scalar_or_array
from .errors import DegenerateWind
from .klein import R, S, randers_data_at

#: ``from_navigation`` refuses winds at least this strong.
WIND_LIMIT = 1.0 - 1e-12


@dataclass(frozen=True)
class NavigationData:
    h: np.ndarray
    W: np.ndarray
    eps: np.ndarray

    @property
    def wind_norm_sq(self):
        """``||W||_h^2`` computed from ``h`` and ``W``."""
        return scalar_or_array(np.einsum("...i,...ij,...j->...", self.W, self.h, self.W))


def epsilon(x):
    """``1 - ||beta||^2 = (R^2 - |x|^2)(1 - R^2 |x|^2) / (R^2 (1 - |x|^2)^2)``."""
    x = require_in_disc(x, R)
    n2 = norm_sq(x)
    return scalar_or_array((R * R - n2) * (1 - R * R * n2) / (R * R * (1 - n2) ** 2))


def sea_metric(x):
    """``h_ij = (1 - R^2|x|^2) / (R^2 (1-|x|^2)^4) [delta_ij (1-|x|^2)^2 + x^i x^j (2 - R^2 - |x|^2)]``."""
    x = require_in_disc(x, R)
    n2 = norm_sq(x)
    outer = np.einsum("...i,...j->...ij", x, x)
    inner = np.eye(2) * ((1 - n2) ** 2)[..., None, None] + outer * (2 - R * R - n2)[..., None, None]
    return inner * ((1 - R * R * n2) / (R * R * (1 - n2) ** 4))[..., None, None]


def wind(x):
    """``W = -S (1 - |x|^2) / (1 - R^2 |x|^2) x``, which points towards the centre."""
    x = require_in_disc(x, R)
    n2 = norm_sq(x)
    return -(S * (1 - n2) / (1 - R * R * n2))[..., None] * x


def printed_wind(x):
    """The published wind field: the same magnitude with the opposite sign."""
    return -wind(x)


def printed_wind_norm_sq(x):
    """The published value ``|x|^2 S^2 / (R^2 (R^2 - |x|^2)^2)`` of ``||W||_h^2``."""
    x = require_in_disc(x, R)
    n2 = norm_sq(x)
    return scalar_or_array(n2 * S**2 / (R * R * (R * R - n2) ** 2))


def to_navigation(x, verify: bool = False) -> NavigationData:
    """Zermelo data at ``x``.

    With ``verify`` the closed ``h`` and ``W`` are checked against
    ``eps (a - b b)`` and ``-a^-1 b / eps`` built from the Randers data.
    """
    x = require_in_disc(x, R)
    nav = NavigationData(sea_metric(x), wind(x), np.asarray(epsilon(x)))
    if verify:
        data = randers_data_at(x)
        eps = 1.0 - data.beta_norm_sq
        h_ref = eps[..., None, None] * (data.a - np.einsum("...i,...j->...ij", data.b, data.b))
        w_ref = -np.einsum("...ij,...j->...i", data.a_inv, data.b) / eps[..., None]
        scale = np.max(np.abs(h_ref))
        if not (
            np.allclose(nav.h, h_ref, rtol=1e-10, atol=1e-10 * scale)
            and np.allclose(nav.W, w_ref, rtol=1e-10, atol=1e-12)
            and np.allclose(nav.eps, eps, rtol=1e-10)
        ):
            raise AssertionError("closed navigation data disagree with eps (a - b b), -b^sharp / eps")
    return nav


def from_navigation(nav: NavigationData, xi):
    """Randers norm of ``xi`` for the sea ``h`` and wind ``W``.

    ``F = (-<W, xi>_h + sqrt(<W, xi>_h^2 + lam |xi|_h^2)) / lam`` with
    ``lam = 1 - ||W||_h^2``.
    """
    xi = as_points(xi)
    w2 = np.asarray(nav.wind_norm_sq)
    if np.any(w2 >= WIND_LIMIT**2):
        raise DegenerateWind(f"||W||_h = {np.sqrt(np.max(w2)):.6g} is not below 1")
    hw = np.einsum("...i,...ij,...j->...", nav.W, nav.h, xi)
    hxi = np.einsum("...i,...ij,...j->...", xi, nav.h, xi)
    lam = 1.0 - w2
    root = np.sqrt(hw * hw + lam * hxi)
    # (-hw + root) / lam without cancellation when hw > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        F = np.where(hw > 0, hxi / (hw + root), (root - hw) / lam)
    return scalar_or_array(np.where(hxi > 0, F, 0.0))
