"""Compiled and pure-Python kernels must agree."""

import numpy as np
import pytest

from l1iso import _pykernels as py
from l1iso import gen_corner_deleted, gen_rectangle, gen_staircase, kernels

ck = pytest.importorskip("l1iso._ckernels")

SHAPES = [gen_corner_deleted(0.1), gen_rectangle(0.2), gen_staircase(3, 5, 0.9), gen_staircase(17, 8, 0.9)]


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("poly", SHAPES)
def test_pointwise_parity(poly):
    rng = np.random.default_rng(0)
    pts = rng.uniform(-0.3, 1.3, size=(400, 2))
    for x, y in pts:
        assert ck.dist_point_polygon(poly.xs, poly.ys, x, y) == pytest.approx(
            py.dist_point_polygon(poly.xs, poly.ys, x, y), abs=1e-14
        )
        assert ck.signed_dist(poly.xs, poly.ys, x, y) == pytest.approx(
            py.signed_dist(poly.xs, poly.ys, x, y), abs=1e-14
        )
    a = ck.dist_points_polygon(poly.xs, poly.ys, pts[:, 0], pts[:, 1])
    b = py.dist_points_polygon(poly.xs, poly.ys, pts[:, 0], pts[:, 1])
    assert np.allclose(a, b, atol=1e-14)


def test_segment_parity():
    rng = np.random.default_rng(1)
    for row in rng.uniform(-2, 2, size=(2000, 6)):
        assert ck.seg_dist_linf(*row) == pytest.approx(py.seg_dist_linf(*row), abs=1e-14)


@pytest.mark.parametrize("poly", SHAPES)
def test_clip_parity(poly):
    rng = np.random.default_rng(2)
    boxes = rng.uniform(-0.2, 1.2, size=(300, 4))
    x0 = np.minimum(boxes[:, 0], boxes[:, 2])
    x1 = np.maximum(boxes[:, 0], boxes[:, 2])
    y0 = np.minimum(boxes[:, 1], boxes[:, 3])
    y1 = np.maximum(boxes[:, 1], boxes[:, 3])
    a = ck.clip_rect_areas(poly.xs, poly.ys, x0, y0, x1, y1)
    b = py.clip_rect_areas(poly.xs, poly.ys, x0, y0, x1, y1)
    assert np.allclose(a, b, atol=1e-13)


def test_cross_len_parity():
    rng = np.random.default_rng(3)
    for k in range(300):
        poly = SHAPES[k % len(SHAPES)]
        t0, t1 = np.sort(rng.uniform(-0.2, 1.2, 2))
        w0, w1 = np.sort(rng.uniform(-0.2, 1.2, 2))
        a = ck.cross_len_extremes(poly.xs, poly.ys, t0, t1, w0, w1)
        b = py.cross_len_extremes(poly.xs, poly.ys, t0, t1, w0, w1)
        assert a == pytest.approx(b, abs=1e-12)


@pytest.mark.parametrize("poly", SHAPES)
def test_box_sup_parity(poly):
    for box in [(0.1, 0.1, 0.9, 0.9), (-0.1, 0.2, 0.8, 1.1), (0.4, 0.4, 0.45, 0.41)]:
        a = ck.box_sup_dist(poly.xs, poly.ys, *box, 0.0, np.inf, 1e-9, 10**6)
        b = py.box_sup_dist(poly.xs, poly.ys, *box, 0.0, np.inf, 1e-9, 10**6)
        assert a[0] == pytest.approx(b[0], abs=2e-9)
        assert a[1] >= a[0] and b[1] >= b[0]


@pytest.mark.parametrize("poly", SHAPES)
def test_overlap_parity(poly):
    side = 0.9
    a = ck.overlap_bnb(poly.xs, poly.ys, side, 0.4, 0.4, 0.6, 0.6, 0.0, 0.5, 0.5, 1e-7, 10**6)
    b = py.overlap_bnb(poly.xs, poly.ys, side, 0.4, 0.4, 0.6, 0.6, 0.0, 0.5, 0.5, 1e-7, 10**6)
    assert a[0] == pytest.approx(b[0], abs=2e-7)
    assert a[3] >= a[0] - 1e-15 and b[3] >= b[0] - 1e-15


def test_known_values():
    r = gen_rectangle(0.1)
    for mod in (ck, py):
        lo, hi, _ = mod.box_sup_dist(r.xs, r.ys, -0.1, 0.1, 0.9, 1.1, 0.0, np.inf, 1e-12, 10**6)
        assert lo == pytest.approx(0.1, abs=1e-12)
        best, *_ = mod.overlap_bnb(r.xs, r.ys, 0.96**0.5, 0.31, 0.49, 0.49, 0.71, 0.0, 0.4, 0.6, 1e-10, 10**6)
        assert best == pytest.approx(0.8 * 0.96**0.5, abs=1e-9)
