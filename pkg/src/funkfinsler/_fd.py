"""Vectorized central finite differences.

All helpers act on functions ``fun(z)`` where ``z`` has shape ``(..., d)``
and the return value has shape ``(...,)`` or ``(..., k)``. Directions ``e``
broadcast against ``z``; steps ``h`` are scalars or broadcast against the
leading axes of ``z``.
"""

import numpy as np


def _step(h, z):
    h = np.asarray(h, dtype=float)
    # lift a per-point step to broadcast over the coordinate axis
    return h[..., None] if h.ndim else h


def _expand(value, ref):
    # match trailing output axes of ``fun`` when the step is per point
    value = np.asarray(value)
    while value.ndim < ref.ndim:
        value = value[..., None]
    return value


def d1(fun, z, e, h):
    """Fourth-order central first derivative of ``fun`` along ``e``."""
    s = _step(h, z) * np.asarray(e, dtype=float)
    fp2, fp1 = fun(z + 2 * s), fun(z + s)
    fm1, fm2 = fun(z - s), fun(z - 2 * s)
    num = -fp2 + 8 * fp1 - 8 * fm1 + fm2
    return num / (12 * _expand(h, num))


def _mixed(fun, z, s1, s2):
    return fun(z + s1 + s2) - fun(z + s1 - s2) - fun(z - s1 + s2) + fun(z - s1 - s2)


def d2(fun, z, e1, h1, e2, h2):
    """Fourth-order second derivative along ``e1`` then ``e2``.

    The four-corner stencil is second order; one Richardson step with the
    doubled stencil removes the leading error term. ``e1 == e2`` gives the
    pure second derivative.
    """
    s1 = _step(h1, z) * np.asarray(e1, dtype=float)
    s2 = _step(h2, z) * np.asarray(e2, dtype=float)
    small = _mixed(fun, z, s1, s2)
    large = _mixed(fun, z, 2 * s1, 2 * s2)
    denom = _expand(4 * np.asarray(h1, dtype=float) * np.asarray(h2, dtype=float), small)
    return (4 * small / denom - large / (4 * denom)) / 3


def unit(d, i):
    e = np.zeros(d)
    e[i] = 1.0
    return e
