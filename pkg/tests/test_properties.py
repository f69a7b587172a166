"""Property-based checks on random rectilinear and general polygons."""

import math

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from l1iso import (
    Square,
    area,
    bounding_rect,
    clip_to_square,
    deficit,
    fit_square_hausdorff,
    fit_square_overlap,
    gen_staircase,
    hausdorff_linf,
    l1_perimeter,
    rect_params,
    reflect_x,
    reflect_y,
    scale,
    swap_xy,
    transform,
    translate,
    validate_polygon,
)
from l1iso.errors import PolygonError

staircases = st.builds(
    gen_staircase,
    st.integers(0, 10**6),
    st.integers(1, 8),
    st.floats(0.0, 1.0),
)
isometries = st.sampled_from(["tx", "rx", "ry", "sw"])


def _iso(kind, dx, dy):
    return {"tx": translate(dx, dy), "rx": reflect_x(), "ry": reflect_y(), "sw": swap_xy()}[kind]


@settings(max_examples=60, deadline=None)
@given(staircases, isometries, st.floats(-50, 50), st.floats(-50, 50))
def test_isometry_invariants(p, kind, dx, dy):
    q = transform(p, _iso(kind, dx, dy))
    assert math.isclose(area(q), area(p), rel_tol=1e-12)
    assert math.isclose(l1_perimeter(q), l1_perimeter(p), rel_tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(staircases, st.floats(0.01, 100))
def test_scale_rules(p, lam):
    q = transform(p, scale(lam))
    assert math.isclose(area(q), lam * lam * area(p), rel_tol=1e-12)
    assert math.isclose(l1_perimeter(q), lam * l1_perimeter(p), rel_tol=1e-12)
    assert abs(deficit(q) - deficit(p)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(staircases)
def test_hull_and_area_bounds(p):
    rp = rect_params(bounding_rect(p))
    assert l1_perimeter(p) >= 4 * rp.ell - 1e-12
    assert area(p) <= rp.ell**2 - 4 * rp.alpha**2 + 1e-12
    assert math.isclose(l1_perimeter(p), 4 * rp.ell, rel_tol=1e-12)


@settings(max_examples=30, deadline=None)
@given(staircases)
def test_validation_idempotent(p):
    assert validate_polygon(p.vertices, name=p.name) == p


@st.composite
def star_polygons(draw):
    n = draw(st.integers(3, 12))
    angles = sorted(draw(st.lists(st.floats(0, 2 * math.pi), min_size=n, max_size=n, unique=True)))
    radii = draw(st.lists(st.floats(0.2, 1.0), min_size=n, max_size=n))
    return [(r * math.cos(t), r * math.sin(t)) for r, t in zip(radii, angles)]


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(star_polygons())
def test_general_polygons(pts):
    try:
        p = validate_polygon(pts)
    except PolygonError:
        return
    rp = rect_params(bounding_rect(p))
    assert area(p) > 0
    assert l1_perimeter(p) >= 4 * rp.ell - 1e-12
    assert deficit(p) >= 0


@settings(max_examples=25, deadline=None)
@given(staircases, st.floats(0.1, 0.9), st.floats(0.1, 0.9), st.floats(0.05, 0.6))
def test_clip_bounds_and_monotone(p, cx, cy, r):
    small = clip_to_square(p, Square(cx, cy, r))
    big = clip_to_square(p, Square(cx, cy, r * 1.3))
    assert -1e-15 <= small <= min(area(p), 4 * r * r) + 1e-12
    assert small <= big + 1e-12


@settings(max_examples=15, deadline=None)
@given(staircases)
def test_fit_certificates(p):
    f = fit_square_hausdorff(p, 1e-5)
    assert f.optimality_gap <= 1e-5
    assert f.delta >= rect_params(bounding_rect(p)).alpha - 1e-5
    c = hausdorff_linf(p, f.square, resolution=1e-8)
    assert c.value <= f.delta + 1e-8
    o = fit_square_overlap(p, 1e-5)
    assert 0 <= o.mu <= 1 and o.optimality_gap <= 1e-5
    assert math.isclose(4 * o.square.r**2, area(p), rel_tol=1e-12)


@settings(max_examples=15, deadline=None)
@given(staircases, st.floats(0.01, 0.2))
def test_translation_lipschitz(p, t):
    s = Square(0.5, 0.5, 0.4)
    a = hausdorff_linf(p, s, resolution=1e-8).value
    b = hausdorff_linf(p, Square(0.5 + t, 0.5, 0.4), resolution=1e-8).value
    assert abs(a - b) <= t + 2e-8
