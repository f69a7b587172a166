import pytest

from l1iso import (
    NonPositiveResolution,
    Point,
    Square,
    dist_linf_point_to_polygon,
    dist_linf_point_to_square,
    gen_corner_deleted,
    gen_rectangle,
    hausdorff_linf,
)


def test_point_to_square():
    s = Square(0, 0, 1)
    assert dist_linf_point_to_square(Point(0, 0), s) == 0
    assert dist_linf_point_to_square(Point(2, 0), s) == 1
    assert dist_linf_point_to_square(Point(2, 2), s) == 1


def test_point_to_polygon(unit_square):
    assert dist_linf_point_to_polygon(Point(0.5, 0.5), unit_square) == 0
    assert dist_linf_point_to_polygon(Point(1.5, 0.5), unit_square) == pytest.approx(0.5)
    assert dist_linf_point_to_polygon(Point(1.3, 1.4), unit_square) == pytest.approx(0.4)
    assert dist_linf_point_to_polygon(Point(1.0, 0.3), unit_square) == 0


def test_point_in_notch():
    p = gen_corner_deleted(0.1)
    # the deleted corner (0, 1) is 0.2 away in L-infinity
    assert dist_linf_point_to_polygon(Point(0.0, 1.0), p) == pytest.approx(0.2)


def test_hausdorff_identity(unit_square):
    c = hausdorff_linf(unit_square, Square(0.5, 0.5, 0.5))
    assert c.value == 0 and c.upper_gap == 0


def test_hausdorff_rectangle():
    c = hausdorff_linf(gen_rectangle(0.1), Square(0.4, 0.6, 0.5), resolution=1e-9)
    assert abs(c.value - 0.1) < 1e-12 and c.upper_gap <= 1e-9


def test_hausdorff_translation(unit_square):
    c = hausdorff_linf(unit_square, Square(0.8, 0.5, 0.5), resolution=1e-9)
    assert c.value == pytest.approx(0.3, abs=1e-12)


def test_hausdorff_square_side_dominates():
    # square bigger than the corner-deleted shape: the notch corner is the worst point
    p = gen_corner_deleted(0.1)
    c = hausdorff_linf(p, Square(0.5, 0.5, 0.5), resolution=1e-9)
    assert c.value == pytest.approx(0.2, abs=1e-9)


def test_resolution_must_be_positive(unit_square):
    with pytest.raises(NonPositiveResolution):
        hausdorff_linf(unit_square, Square(0.5, 0.5, 0.5), resolution=0)


def test_intervals_overlap_when_refined():
    p = gen_corner_deleted(0.17)
    s = Square(0.47, 0.52, 0.41)
    coarse = hausdorff_linf(p, s, resolution=1e-2)
    fine = hausdorff_linf(p, s, resolution=5e-3)
    assert fine.value <= coarse.upper + 1e-15 and coarse.value <= fine.upper + 1e-15


def test_translation_moves_value_at_most_t():
    p = gen_corner_deleted(0.2)
    base = hausdorff_linf(p, Square(0.5, 0.5, 0.4), resolution=1e-9)
    for t in (0.01, 0.05, 0.2):
        moved = hausdorff_linf(p, Square(0.5 + t, 0.5, 0.4), resolution=1e-9)
        assert abs(moved.value - base.value) <= t + 2e-9
