import math

import numpy as np
import pytest

from funkfinsler.core import sample_tangent
from funkfinsler.errors import LorentzSignature, OutOfDomain
from funkfinsler.klein import KLEIN, R, alpha_beta, funk_metric
from funkfinsler.models import (
    HEMISPHERE,
    HEMISPHERE_RANDERS,
    HYPERBOLOID,
    KLEIN_TO_UPPER,
    LORENTZ_RANDERS,
    POINCARE,
    POINCARE_TO_KLEIN,
    R_POINCARE,
    R_UPPER,
    UPPER_CENTER,
    UPPER_HALF,
    UPPER_TO_KLEIN,
    funk_poincare,
    funk_poincare_pullback,
    funk_upper,
    funk_upper_parts,
    funk_upper_pullback,
    funk_upper_pullback_parts,
    isometry_check,
    lorentz_randers,
    pullback,
)

CHARTS = [
    (POINCARE_TO_KLEIN, 0.95),
    (KLEIN_TO_UPPER, 0.95),
    (HYPERBOLOID, R - 1e-2),
    (HEMISPHERE, R - 1e-2),
]


@pytest.mark.parametrize("chart, radius", CHARTS, ids=lambda c: getattr(c, "name", ""))
def test_closed_jacobian_matches_numeric(chart, radius, rng):
    x, _ = sample_tangent(rng, 50, radius)
    np.testing.assert_allclose(chart.jacobian(x), chart.jacobian(x, numeric=True), rtol=1e-6, atol=1e-6)


def test_upper_to_klein_jacobian(rng):
    x, _ = sample_tangent(rng, 50, R_UPPER * 0.9, UPPER_CENTER)
    np.testing.assert_allclose(UPPER_TO_KLEIN.jacobian(x), UPPER_TO_KLEIN.jacobian(x, numeric=True), rtol=1e-6, atol=1e-8)


def test_g_inverse_round_trip(rng):
    x, _ = sample_tangent(rng, 100, 0.99)
    np.testing.assert_allclose(UPPER_TO_KLEIN(KLEIN_TO_UPPER(x)), x, atol=1e-12)


def test_map_images_of_boundary_points():
    # the Poincare radius tanh(1/2) lands on the Klein radius tanh(1)
    assert np.linalg.norm(POINCARE_TO_KLEIN([R_POINCARE, 0.0])) == pytest.approx(R, rel=1e-15)
    # the Klein disc |x| < R becomes the Euclidean disc about (0, e + 1/e) of radius e - 1/e
    angles = np.linspace(0, 2 * math.pi, 13)
    rim = (R - 1e-15) * np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    dist = np.linalg.norm(KLEIN_TO_UPPER(rim) - UPPER_CENTER, axis=-1)
    np.testing.assert_allclose(dist, R_UPPER, rtol=1e-12)
    np.testing.assert_allclose(KLEIN_TO_UPPER([[R - 1e-15, 0.0], [1e-15 - R, 0.0]])[:, 1], [2 / math.e, 2 * math.e], rtol=1e-12)


def test_eta_lands_on_hyperboloid(rng):
    x, _ = sample_tangent(rng, 100, R - 1e-3)
    p = HYPERBOLOID(x)
    np.testing.assert_allclose(p[:, 2] ** 2 - p[:, 0] ** 2 - p[:, 1] ** 2, 1.0, rtol=1e-9)
    assert np.all(p[:, 2] > 0)


def test_psi_lands_on_sphere(rng):
    x, _ = sample_tangent(rng, 100, R - 1e-3)
    np.testing.assert_allclose(np.linalg.norm(HEMISPHERE(x), axis=-1), R, rtol=1e-14)


@pytest.mark.parametrize("chart, ambient", [(HYPERBOLOID, LORENTZ_RANDERS), (HEMISPHERE, HEMISPHERE_RANDERS)], ids=["eta", "psi"])
def test_ambient_pullbacks_are_the_funk_metric(chart, ambient, rng):
    x, xi = sample_tangent(rng, 100, R - 1e-3)
    got = pullback(chart, ambient, x, xi)
    assert np.all(np.isfinite(got))
    np.testing.assert_allclose(got, funk_metric(x, xi), rtol=1e-9)


@pytest.mark.parametrize(
    "chart, src, dst, radius, center",
    [
        (POINCARE_TO_KLEIN, POINCARE, KLEIN, 0.9, (0.0, 0.0)),
        (KLEIN_TO_UPPER, KLEIN, UPPER_HALF, 0.9, (0.0, 0.0)),
        (UPPER_TO_KLEIN, UPPER_HALF, KLEIN, 1.5, (0.0, 2.0)),
    ],
    ids=["f", "g", "g_inv"],
)
def test_model_maps_are_isometries(chart, src, dst, radius, center):
    assert isometry_check(chart, src, dst, 100, radius=radius, center=center, numeric_jacobian=False) <= 1e-9
    assert isometry_check(chart, src, dst, 100, radius=radius, center=center) <= 1e-7


def test_funk_poincare_closed_form(rng):
    x, xi = sample_tangent(rng, 100, R_POINCARE - 1e-3)
    np.testing.assert_allclose(funk_poincare(x, xi), funk_poincare_pullback(x, xi), rtol=1e-9)
    # centre value: F(0, xi) = 2 |xi| / R
    assert funk_poincare((0.0, 0.0), (1.0, 0.0)) == pytest.approx(2 / R, rel=1e-14)


def test_funk_poincare_domain():
    with pytest.raises(OutOfDomain):
        funk_poincare((0.5, 0.0), (1.0, 0.0))


def test_upper_printed_alpha_agrees_but_beta_does_not(rng):
    x, xi = sample_tangent(rng, 50, R_UPPER * 0.9, UPPER_CENTER)
    a_printed, b_printed = funk_upper_parts(x, xi)
    a_ref, b_ref = funk_upper_pullback_parts(x, xi)
    np.testing.assert_allclose(a_printed, a_ref, rtol=1e-9)
    assert np.max(np.abs(np.asarray(b_printed) - b_ref)) > 1e-2
    assert not np.allclose(funk_upper(x, xi), funk_upper_pullback(x, xi), rtol=1e-3)


def test_upper_pullback_at_image_of_origin():
    # g(0) = (0, 2) and dg(0) = 2 I, so F_U((0, 2), xi) = |xi| / (2R)
    assert funk_upper_pullback((0.0, 2.0), (0.0, 1.0)) == pytest.approx(1 / (2 * R), rel=1e-12)


def test_lorentz_rejects_timelike_vectors():
    with pytest.raises(LorentzSignature):
        lorentz_randers(np.array([0.0, 0.0, 1.0]), np.array([0.1, 0.0, 1.0]))


def test_lorentz_accepts_null_vectors():
    v = lorentz_randers(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 1.0]))
    assert np.isfinite(v)


def test_hyperboloid_tangents_are_spacelike(rng):
    x, xi = sample_tangent(rng, 100, R - 1e-3)
    v = np.einsum("...ij,...j->...i", HYPERBOLOID.jacobian(x), xi)
    assert np.all(v[:, 0] ** 2 + v[:, 1] ** 2 - v[:, 2] ** 2 > 0)


def test_chart_domain_is_enforced():
    with pytest.raises(OutOfDomain):
        HYPERBOLOID([0.8, 0.0])
    with pytest.raises(OutOfDomain):
        UPPER_TO_KLEIN([0.0, -1.0])


def test_alpha_pulls_back_from_hemisphere_euclidean_part(rng):
    # |dPsi xi| / Psi_3 is the Riemannian part alpha
    x, xi = sample_tangent(rng, 50, R - 1e-2)
    v = np.einsum("...ij,...j->...i", HEMISPHERE.jacobian(x), xi)
    alpha = np.linalg.norm(v, axis=-1) / HEMISPHERE(x)[:, 2]
    np.testing.assert_allclose(alpha, alpha_beta(x, xi)[0], rtol=1e-10)
