import math

import pytest

from l1iso import (
    FamilySpec,
    ParamOutOfRange,
    area,
    closed_form,
    deficit,
    gen_corner_deleted,
    gen_family,
    gen_rectangle,
    gen_sandwich,
    gen_staircase,
    l1_perimeter,
    bounding_rect,
    rect_params,
    reflect_x,
    scale,
    staircase_corpus,
    transform,
)
from l1iso.errors import ParseError
from l1iso.extremal import parse_family


def test_corner_vertices():
    p = gen_corner_deleted(0.1)
    assert [tuple(v) for v in p.vertices] == [(0, 0), (1, 0), (1, 1), (0.2, 1), (0.2, 0.8), (0, 0.8)]
    assert area(p) == pytest.approx(0.96)


def test_corner_limits():
    p = gen_corner_deleted(1e-6)
    assert area(p) == pytest.approx(1.0, abs=1e-11)
    assert deficit(p) < 1e-9
    for bad in (0.0, 0.5, -0.1, 0.7):
        with pytest.raises(ParamOutOfRange):
            gen_corner_deleted(bad)


def test_rectangle_family():
    assert [tuple(v) for v in gen_rectangle(0).vertices] == [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert area(gen_rectangle(0.1)) == pytest.approx(0.96)
    thin = gen_rectangle(0.49)
    assert deficit(thin) == pytest.approx(64 * 0.2401 / 0.0396, rel=1e-9)
    with pytest.raises(ParamOutOfRange):
        gen_rectangle(0.5)


def test_closed_form():
    cf = closed_form(FamilySpec("rectangle", 0.1))
    assert cf.epsilon == pytest.approx(0.666666666667)
    assert cf.delta_expected == 0.1
    assert cf.mu_expected == pytest.approx(0.81650, abs=1e-5)
    cf = closed_form(FamilySpec("corner_deleted", 0.1))
    assert cf.mu_expected is None and cf.delta_expected == 0.1
    cf = closed_form(("rectangle", 0.0, 2.5))
    assert (cf.epsilon, cf.delta_expected, cf.mu_expected) == (0.0, 0.0, 1.0)
    assert cf.area == pytest.approx(6.25)


def test_spec_validation():
    with pytest.raises(ParamOutOfRange):
        FamilySpec("rectangle", 0.0)
    with pytest.raises(ParamOutOfRange):
        FamilySpec("hexagon", 0.1)
    with pytest.raises(ParamOutOfRange):
        FamilySpec("rectangle", 0.1, scale=0)


def test_placement():
    p = gen_family(FamilySpec("corner_deleted", 0.2, 2.0, (reflect_x(),)))
    assert area(p) == pytest.approx(4 * (1 - 0.16))
    assert bounding_rect(p).xmax == 0


@pytest.mark.parametrize("make", [gen_corner_deleted, gen_rectangle])
def test_generators_commute_with_scale(make):
    for s in (0.5, 3.0, 17.25):
        assert make(0.13, s).vertices == transform(make(0.13, 1.0), scale(s)).vertices


def test_staircase_degenerate_case():
    p = gen_staircase(1, 1, 0.0)
    assert len(p) == 6
    rp = rect_params(bounding_rect(p))
    assert rp.alpha == 0 and rp.ell == 1


def test_staircase_properties():
    p = gen_staircase(42, 5, 0.9)
    assert deficit(p) > 0
    assert gen_staircase(42, 5, 0.9) == p
    assert gen_staircase(43, 5, 0.9) != p


def test_staircase_perimeter_equals_hull():
    for p in staircase_corpus(1, 40):
        assert l1_perimeter(p) == pytest.approx(4 * rect_params(bounding_rect(p)).ell, rel=1e-14)
        b = bounding_rect(p)
        assert b.xmin >= 0 and b.ymin >= 0 and b.xmax <= 1 and b.ymax <= 1


def test_staircase_bad_args():
    with pytest.raises(ParamOutOfRange):
        gen_staircase(1, 0, 0.5)
    with pytest.raises(ParamOutOfRange):
        gen_staircase(1, 2, 1.5)
    with pytest.raises(ParamOutOfRange):
        gen_staircase(-1, 2, 0.5)


def test_frozen_staircase_vertices():
    # seed -> vertices is part of the corpus contract
    p = gen_staircase(1, 1, 0.0)
    assert p.vertices[2].y == pytest.approx(0.5529519376099781, abs=0)


def test_sandwich_contains_inner_square():
    from l1iso import Square, clip_to_square

    for seed in range(10):
        p = gen_sandwich(seed, 0.3, 0.5)
        assert clip_to_square(p, Square(0, 0, 0.3)) == pytest.approx(0.36, abs=1e-12)
        b = bounding_rect(p)
        assert -0.5 <= b.xmin and b.xmax <= 0.5 and -0.5 <= b.ymin and b.ymax <= 0.5


def test_parse_family():
    assert parse_family("corner:0.1") == ("corner_deleted", 0.1)
    assert parse_family("rect:0.25") == ("rectangle", 0.25)
    assert parse_family("rect") == ("rectangle", None)
    with pytest.raises(ParseError):
        parse_family("circle:0.1")
    with pytest.raises(ParseError):
        parse_family("rect:abc")
