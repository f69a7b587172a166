import math

import pytest

from l1iso import (
    GridTooFine,
    NonPositiveTolerance,
    brute_force_fit_oracle,
    fit_square_hausdorff,
    fit_square_overlap,
    gen_corner_deleted,
    gen_rectangle,
    gen_staircase,
    hausdorff_linf,
    rect_params,
    bounding_rect,
    transform,
    translate,
    swap_xy,
    scale,
    validate_polygon,
)
from l1iso.errors import EvaluationBudgetExceeded
from l1iso.fitting import compass_search


def test_unit_square_fit(unit_square):
    f = fit_square_hausdorff(unit_square, 1e-6)
    assert f.delta == 0 and f.optimality_gap == 0
    assert (f.square.cx, f.square.cy, f.square.r) == (0.5, 0.5, 0.5)


@pytest.mark.parametrize("p", [0.05, 0.1, 0.25, 0.4])
def test_rectangle_delta(p):
    f = fit_square_hausdorff(gen_rectangle(p), 1e-6)
    assert abs(f.delta - p) <= 1e-6
    assert f.optimality_gap <= 1e-6


@pytest.mark.parametrize("p", [0.05, 0.1, 0.25, 0.4])
def test_corner_delta(p):
    f = fit_square_hausdorff(gen_corner_deleted(p), 1e-6)
    assert abs(f.delta - p) <= 1e-6


def test_witness_is_certified():
    p = gen_staircase(5, 4, 0.9)
    f = fit_square_hausdorff(p, 1e-5)
    c = hausdorff_linf(p, f.square, resolution=1e-9)
    assert c.value <= f.delta + 1e-9
    assert f.delta - f.optimality_gap <= c.value + 1e-9


def test_wide_shapes_are_handled_by_swapping():
    p = transform(gen_staircase(3, 3, 0.9), swap_xy())
    q = gen_staircase(3, 3, 0.9)
    assert fit_square_hausdorff(p).delta == pytest.approx(fit_square_hausdorff(q).delta, abs=1e-9)


def test_delta_at_least_alpha():
    for seed in range(1, 15):
        p = gen_staircase(seed, 1 + seed % 8, 0.9)
        alpha = rect_params(bounding_rect(p)).alpha
        assert fit_square_hausdorff(p).delta >= alpha - 1e-5


def test_bad_tolerance(unit_square):
    with pytest.raises(NonPositiveTolerance):
        fit_square_hausdorff(unit_square, 0)
    with pytest.raises(NonPositiveTolerance):
        fit_square_overlap(unit_square, -1)


def test_overlap_closed_forms(unit_square):
    assert fit_square_overlap(unit_square).mu == pytest.approx(1.0, abs=1e-12)
    o = fit_square_overlap(gen_rectangle(0.1))
    assert o.mu == pytest.approx(0.8164965809, abs=1e-9)
    assert 4 * o.square.r**2 == pytest.approx(0.96, rel=1e-12)


def test_overlap_translation_invariant():
    p = gen_staircase(11, 4, 0.9)
    a = fit_square_overlap(p).mu
    b = fit_square_overlap(transform(p, translate(-4.5, 7.25))).mu
    assert abs(a - b) <= 2e-5


def test_overlap_is_one_only_for_squares():
    assert fit_square_overlap(gen_corner_deleted(0.01)).mu < 1 - 1e-6
    sq = validate_polygon([(2, 3), (5, 3), (5, 6), (2, 6)])
    assert fit_square_overlap(sq).mu == pytest.approx(1.0, abs=1e-12)


def test_scaling_covariance():
    p = gen_staircase(8, 8, 0.9)
    f1, f3 = fit_square_hausdorff(p), fit_square_hausdorff(transform(p, scale(3)))
    assert f3.delta == pytest.approx(3 * f1.delta, abs=2e-5)


def test_budget_is_enforced(monkeypatch):
    monkeypatch.setenv("ISO_L1_EVAL_BUDGET", "10")
    with pytest.raises(EvaluationBudgetExceeded):
        fit_square_hausdorff(gen_staircase(2, 3, 0.9))


def test_oracle_examples(unit_square):
    f = brute_force_fit_oracle(unit_square, 0.05, "hausdorff")
    assert f.delta <= 0.05
    f = brute_force_fit_oracle(gen_rectangle(0.1), 0.01, "hausdorff")
    assert 0.09 <= f.delta <= 0.11
    o = brute_force_fit_oracle(gen_rectangle(0.1), 0.01, "overlap")
    assert 0.80 <= o.mu <= 0.83


def test_oracle_grid_too_fine(monkeypatch):
    monkeypatch.setenv("ISO_L1_EVAL_BUDGET", "1000")
    with pytest.raises(GridTooFine):
        brute_force_fit_oracle(gen_corner_deleted(0.2), 0.001, "hausdorff")
    with pytest.raises(GridTooFine):
        brute_force_fit_oracle(gen_corner_deleted(0.45), 0.0001, "overlap")


def test_oracle_bad_mode(unit_square):
    with pytest.raises(ValueError):
        brute_force_fit_oracle(unit_square, 0.1, "volume")
    with pytest.raises(ValueError):
        brute_force_fit_oracle(unit_square, 0.0)


def test_compass_search_finds_minimum():
    x, fx = compass_search(lambda t: abs(t - 0.3), 0.9, 0.0, 1.0, 0.25, 1e-9)
    assert abs(x - 0.3) < 1e-8 and fx < 1e-8


def test_deterministic():
    p = gen_staircase(21, 6, 0.9)
    assert fit_square_hausdorff(p) == fit_square_hausdorff(p)
    assert fit_square_overlap(p) == fit_square_overlap(p)
