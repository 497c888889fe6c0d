import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funkfinsler.core import euclidean_field, sample_tangent
from funkfinsler.errors import OutOfDomain, ZeroVector
from funkfinsler.geodesics import (
    collinearity_residual,
    curve_length,
    integrate_geodesic,
    integrate_geodesics,
    klein_spray,
    path_length,
    segment_length,
    speed_drift,
    spray_closed,
    spray_numeric,
)
from funkfinsler.klein import FUNK, KLEIN, R, funk_distance


def test_spray_at_origin():
    np.testing.assert_allclose(spray_closed([0.0, 0.0], [1.0, 0.0]), [0.275720564771783, 0.0], rtol=1e-13)


@settings(max_examples=50, deadline=None)
@given(
    r=st.floats(0.0, 0.99),
    th=st.floats(0.0, 2 * np.pi),
    phi=st.floats(0.0, 2 * np.pi),
    lam=st.floats(0.01, 100.0),
)
def test_spray_is_positively_two_homogeneous_and_projective(r, th, phi, lam):
    x = R * r * np.array([np.cos(th), np.sin(th)])
    xi = np.array([np.cos(phi), np.sin(phi)])
    g = spray_closed(x, xi)
    np.testing.assert_allclose(spray_closed(x, lam * xi), lam**2 * g, rtol=1e-12, atol=1e-300)
    # G is parallel to xi, so geodesics are straight lines
    assert abs(g[0] * xi[1] - g[1] * xi[0]) <= 1e-12 * np.linalg.norm(g)


def test_spray_rejects_zero_vector():
    with pytest.raises(ZeroVector):
        spray_closed([0.1, 0.0], [0.0, 0.0])


def test_euclidean_spray_vanishes(rng):
    x, xi = sample_tangent(rng, 20, 1.0)
    np.testing.assert_allclose(spray_numeric(euclidean_field(), x, xi, x_step=1e-3), 0.0, atol=1e-8)


def test_numeric_spray_of_klein_metric(rng):
    x, xi = sample_tangent(rng, 50, 0.9)
    np.testing.assert_allclose(spray_numeric(KLEIN, x, xi), klein_spray(x, xi), rtol=1e-6, atol=1e-9)


def test_closed_spray_matches_numeric(rng):
    x, xi = sample_tangent(rng, 100, R - 1e-2)
    got, ref = spray_numeric(FUNK, x, xi), spray_closed(x, xi)
    err = np.linalg.norm(got - ref, axis=-1) / np.linalg.norm(ref, axis=-1).clip(1e-300)
    assert err.max() <= 1e-5


def test_radial_geodesic_from_origin():
    tr = integrate_geodesic(FUNK, [0.0, 0.0], [0.6, 0.8], 1.0, 1e-3, spray=spray_closed)
    assert tr.terminated_reason == "completed"
    assert collinearity_residual(tr) <= 1e-9
    assert speed_drift(FUNK, tr) <= 1e-6
    # unit initial speed: arc length equals the time elapsed
    v = np.array([0.6, 0.8]) / FUNK([0.0, 0.0], [0.6, 0.8])
    tr = integrate_geodesic(FUNK, [0.0, 0.0], v, 0.5, 1e-3, spray=spray_closed)
    assert funk_distance(tr.x[0], tr.x[-1]) == pytest.approx(0.5, rel=1e-8)


def test_klein_chords():
    tr = integrate_geodesic(KLEIN, [0.2, -0.3], [0.5, 0.4], 1.5, 1e-3, spray=klein_spray)
    assert collinearity_residual(tr) <= 1e-12
    assert speed_drift(KLEIN, tr) <= 1e-9


def test_short_run_with_numeric_spray():
    tr = integrate_geodesic(FUNK, [0.1, 0.2], [-0.3, 0.5], 0.05, 1e-2)
    ref = integrate_geodesic(FUNK, [0.1, 0.2], [-0.3, 0.5], 0.05, 1e-2, spray=spray_closed)
    np.testing.assert_allclose(tr.x, ref.x, atol=1e-8)
    assert collinearity_residual(tr) <= 1e-6


def test_trace_stops_before_leaving_domain():
    tr = integrate_geodesic(FUNK, [0.7, 0.0], [1.0, 0.0], 50.0, 1e-2, spray=spray_closed)
    assert tr.terminated_reason == "left_domain"
    assert np.all(np.linalg.norm(tr.x, axis=-1) < R)
    assert tr.t[-1] < 50.0


def test_stop_radius():
    tr = integrate_geodesic(FUNK, [0.0, 0.0], [1.0, 0.0], 50.0, 1e-2, spray=spray_closed, stop_radius=0.5)
    assert tr.terminated_reason == "left_domain"
    assert np.all(np.linalg.norm(tr.x, axis=-1) < 0.5)


def test_batched_traces_match_single(rng):
    x, v = sample_tangent(rng, 4, 0.5)
    batch = integrate_geodesics(FUNK, x, v, 0.2, 1e-2, spray=spray_closed)
    for i, tr in enumerate(batch):
        single = integrate_geodesic(FUNK, x[i], v[i], 0.2, 1e-2, spray=spray_closed)
        np.testing.assert_allclose(tr.x, single.x, rtol=1e-14, atol=1e-15)


def test_integrator_input_validation():
    with pytest.raises(ZeroVector):
        integrate_geodesic(FUNK, [0.0, 0.0], [0.0, 0.0], 1.0, spray=spray_closed)
    with pytest.raises(OutOfDomain):
        integrate_geodesic(FUNK, [0.9, 0.0], [1.0, 0.0], 1.0, spray=spray_closed)


def test_segment_length_matches_distance(rng):
    x, _ = sample_tangent(rng, 5, R - 1e-2)
    y, _ = sample_tangent(rng, 5, R - 1e-2)
    for a, b in zip(x, y):
        assert segment_length(FUNK, a, b) == pytest.approx(funk_distance(a, b), rel=1e-8)


def test_detour_is_longer():
    x, y = np.array([-0.3, 0.0]), np.array([0.4, 0.1])
    assert path_length(FUNK, [x, [0.0, 0.4], y]) > funk_distance(x, y) + 1e-3


def test_zero_length_segment():
    assert segment_length(FUNK, [0.1, 0.1], [0.1, 0.1]) == 0.0


def test_curve_length_with_difference_tangents():
    # a quadratically parametrized segment has the same length
    t = np.linspace(0.0, 1.0, 4001)
    x, y = np.array([0.0, 0.0]), np.array([0.5, 0.2])
    points = x + (t**2)[:, None] * (y - x)
    assert curve_length(FUNK, points, t) == pytest.approx(funk_distance(x, y), rel=1e-6)


def test_curve_length_rejects_paths_outside():
    with pytest.raises(OutOfDomain):
        curve_length(FUNK, [[0.0, 0.0], [0.5, 0.0], [0.9, 0.0]])
