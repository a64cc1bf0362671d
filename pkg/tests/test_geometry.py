import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resolvinv.errors import EmptyInputError
from resolvinv.geometry import (
    HullPolygon,
    ImaginaryAxis,
    PointSpectrum,
    PositiveHalfLine,
    UnitCircle,
    convex_hull,
    hull_distance,
    hull_separated_from,
    hull_spectrum_distance,
)

finite_complex = st.complex_numbers(min_magnitude=0, max_magnitude=1e6,
                                    allow_nan=False, allow_infinity=False)


def brute_force_hull_members(points):
    """Points of S on the hull boundary: those not strictly inside any
    triangle of other points (tiny sets only)."""
    members = []
    for p in points:
        others = [q for q in points if q != p]
        inside = False
        for a, b, c in itertools.combinations(others, 3):
            # barycentric test
            d1 = b - a
            d2 = c - a
            det = d1.real * d2.imag - d2.real * d1.imag
            if abs(det) < 1e-12:
                continue
            r = p - a
            k1 = (r.real * d2.imag - d2.real * r.imag) / det
            k2 = (d1.real * r.imag - r.real * d1.imag) / det
            if k1 > 1e-9 and k2 > 1e-9 and 1 - k1 - k2 > 1e-9:
                inside = True
                break
        if not inside:
            members.append(p)
    return set(members)


class TestConvexHull:
    def test_single_point(self):
        hull = convex_hull([1 + 0j])
        assert hull.vertices == (1 + 0j,)

    def test_interior_point_dropped(self):
        pts = [0j, 1 + 0j, 1j, 0.2 + 0.2j]
        hull = convex_hull(pts)
        expected = brute_force_hull_members(pts)
        assert set(hull.vertices) == expected == {0j, 1 + 0j, 1j}

    def test_collinear_segment(self):
        hull = convex_hull([-1 + 0j, 1 + 0j, 0j])
        assert set(hull.vertices) == {-1 + 0j, 1 + 0j}
        assert len(hull.vertices) == 2

    def test_duplicates_collapse(self):
        hull = convex_hull([2 + 1j, 2 + 1j, 2 + 1j])
        assert hull.vertices == (2 + 1j,)

    def test_empty_raises(self):
        with pytest.raises(EmptyInputError):
            convex_hull([])

    def test_counterclockwise_orientation(self):
        hull = convex_hull([0j, 2 + 0j, 2 + 2j, 0 + 2j, 1 + 1j])
        v = hull.vertices
        assert len(v) == 4
        area = sum((v[i].real * v[(i + 1) % 4].imag
                    - v[(i + 1) % 4].real * v[i].imag) for i in range(4))
        assert area > 0


class TestHullDistance:
    def test_interior_point(self):
        hull = convex_hull([0j, 1 + 0j, 1j])
        assert hull_distance(hull, 0.2 + 0.2j) == 0.0

    def test_segment_perpendicular(self):
        hull = convex_hull([-1 + 0j, 1 + 0j])
        assert hull_distance(hull, 1j) == pytest.approx(1.0, abs=1e-14)

    def test_exterior_against_edge_sampling(self):
        hull = convex_hull([0j, 1 + 0j, 1j])
        z = 2 + 0j
        # oracle: dense sampling of the hull boundary
        best = min(
            abs(z - (a + t * (b - a)))
            for a, b in hull.edges()
            for t in np.linspace(0, 1, 20001)
        )
        assert hull_distance(hull, z) == pytest.approx(best, abs=1e-7)
        assert hull_distance(hull, z) == pytest.approx(1.0, abs=1e-12)

    def test_point_hull(self):
        hull = convex_hull([3 + 4j])
        assert hull_distance(hull, 0j) == pytest.approx(5.0)


class TestSeparation:
    def test_point_inside_circle(self):
        hull = convex_hull([0.5 + 0j])
        ok, d = hull_separated_from(hull, UnitCircle(), 0.0)
        assert ok and d == pytest.approx(0.5)

    def test_segment_crosses_circle(self):
        hull = convex_hull([0.5 + 0j, 1.5 + 0j])
        ok, d = hull_separated_from(hull, UnitCircle(), 0.0)
        assert not ok and d == 0.0

    def test_hull_outside_circle(self):
        hull = convex_hull([3 + 0j, 4 + 1j, 4 - 1j])
        ok, d = hull_separated_from(hull, UnitCircle(), 0.0)
        assert ok and d == pytest.approx(2.0)

    def test_hull_contains_circle(self):
        hull = convex_hull([3 + 3j, -3 + 3j, -3 - 3j, 3 - 3j])
        ok, d = hull_separated_from(hull, UnitCircle(), 0.0)
        assert not ok and d == 0.0

    def test_imaginary_axis_margin(self):
        hull = convex_hull([2 + 1j, 3 + 0j, 2 - 1j])
        ok, d = hull_separated_from(hull, ImaginaryAxis(), 1.0)
        assert ok and d == pytest.approx(2.0)

    def test_imaginary_axis_crossing(self):
        hull = convex_hull([-1 + 0j, 1 + 1j])
        ok, d = hull_separated_from(hull, ImaginaryAxis(), 0.0)
        assert not ok and d == 0.0

    def test_positive_ray(self):
        hull = convex_hull([-2 + 1j, -1 + 2j])
        _, d = hull_separated_from(hull, PositiveHalfLine(), 0.0)
        # nearest ray point is the origin
        assert d == pytest.approx(hull_distance(hull, 0j))

    def test_positive_ray_above(self):
        hull = convex_hull([1 + 1j, 2 + 2j])
        _, d = hull_separated_from(hull, PositiveHalfLine(), 0.0)
        assert d == pytest.approx(1.0)

    def test_positive_ray_crossing(self):
        hull = convex_hull([1 - 1j, 1 + 1j])
        ok, d = hull_separated_from(hull, PositiveHalfLine(), 0.0)
        assert not ok and d == 0.0

    def test_negative_margin_rejected(self):
        hull = convex_hull([1 + 0j])
        with pytest.raises(ValueError):
            hull_separated_from(hull, UnitCircle(), -0.1)


points_strategy = st.lists(
    st.complex_numbers(min_magnitude=0, max_magnitude=100,
                       allow_nan=False, allow_infinity=False),
    min_size=1, max_size=12)


@given(points_strategy)
@settings(max_examples=200, deadline=None)
def test_hull_idempotent(points):
    hull = convex_hull(points)
    again = convex_hull(hull.vertices)
    assert set(again.vertices) == set(hull.vertices)


@given(points_strategy)
@settings(max_examples=200, deadline=None)
def test_hull_contains_inputs(points):
    hull = convex_hull(points)
    for p in points:
        assert hull_distance(hull, p) <= 1e-12 * (1 + abs(p))


@given(points_strategy, finite_complex, st.floats(0, 10))
@settings(max_examples=200, deadline=None)
def test_point_set_separation_matches_distance(points, z, margin):
    hull = convex_hull(points)
    ok, d = hull_separated_from(hull, PointSpectrum((z,)), margin)
    assert d == hull_distance(hull, z)
    assert ok == (d > margin)


@given(points_strategy, finite_complex,
       st.floats(-np.pi, np.pi),
       st.complex_numbers(max_magnitude=10, allow_nan=False,
                          allow_infinity=False))
@settings(max_examples=150, deadline=None)
def test_distance_equivariance(points, z, phi, shift):
    rot = cmath.exp(1j * phi)
    d1 = hull_distance(convex_hull(points), z)
    d2 = hull_distance(convex_hull([rot * p + shift for p in points]),
                       rot * z + shift)
    scale = max(1.0, d1)
    assert abs(d1 - d2) <= 1e-9 * scale


def test_spectrum_point_distances():
    assert UnitCircle().distance_to(0.5j) == pytest.approx(0.5)
    assert UnitCircle().distance_to(3 + 0j) == pytest.approx(2.0)
    assert PositiveHalfLine().distance_to(2 + 3j) == pytest.approx(3.0)
    assert PositiveHalfLine().distance_to(-3 - 4j) == pytest.approx(5.0)
    assert ImaginaryAxis().distance_to(-2 + 7j) == pytest.approx(2.0)
    assert PointSpectrum((1j, -1j)).distance_to(0j) == pytest.approx(1.0)


def test_degenerate_hull_spectrum_distance():
    point = HullPolygon((0.25 + 0j,))
    assert hull_spectrum_distance(point, UnitCircle()) == pytest.approx(0.75)
    seg = HullPolygon((-0.5 + 0j, 0.5 + 0j))
    assert hull_spectrum_distance(seg, UnitCircle()) == pytest.approx(0.5)
