import math

import pytest

from l1iso import (
    check_lemma_alpha,
    check_lemma_excluded,
    check_lemma_hull,
    check_lemma_mu,
    check_prop_area,
    check_theorem_main,
    deficit,
    equality_ratio,
    full_report,
    gen_corner_deleted,
    gen_rectangle,
    gen_staircase,
    scale,
    transform,
)
from l1iso.errors import NegativeBeyondTolerance
from l1iso.isoperimetry import CheckRecord, _deficit_from, check_lemma_alpha_all, measure, prop2_bound


def test_deficit_values(unit_square):
    assert deficit(unit_square) == 0
    assert deficit(gen_rectangle(0.1)) == pytest.approx(0.64 / 0.96, rel=1e-12)
    assert deficit(gen_corner_deleted(0.1)) == pytest.approx(0.64 / 0.96, rel=1e-12)


def test_deficit_clamp_and_guard():
    assert _deficit_from(4.0, 1.0 + 1e-12) == 0.0
    with pytest.raises(NegativeBeyondTolerance):
        _deficit_from(3.9, 1.0)


def test_deficit_scale_invariant():
    p = gen_staircase(4, 4, 0.9)
    assert deficit(transform(p, scale(7))) == pytest.approx(deficit(p), abs=1e-12)


def test_equality_ratio(unit_square):
    assert equality_ratio(unit_square) is None
    assert equality_ratio(gen_rectangle(0.1)) == pytest.approx(1.0, abs=1e-5)
    assert equality_ratio(gen_corner_deleted(0.1)) == pytest.approx(1.0, abs=1e-5)


def test_theorem_main(unit_square):
    r = check_theorem_main(unit_square)
    assert r.passed and r.lhs == 0 and r.rhs == 0
    r = check_theorem_main(gen_rectangle(0.2))
    assert r.passed and r.lhs == pytest.approx(r.rhs, rel=1e-5)
    r = check_theorem_main(gen_staircase(9, 5, 0.9))
    assert r.passed and r.lhs < r.rhs


def test_prop_area():
    r = check_prop_area(gen_rectangle(0.1))
    assert r.passed
    assert r.rhs == pytest.approx(0.81650, abs=1e-5)
    # 2 - sqrt(1 + eps/16) - sqrt(eps)/4 at eps = 2/3
    assert r.lhs == pytest.approx(0.7752551286, abs=1e-9)
    assert check_prop_area(gen_corner_deleted(0.05)).passed


def test_prop2_bound_branches():
    assert prop2_bound(0.0) == 1.0
    eps = 0.6666666666666666
    assert prop2_bound(eps) == pytest.approx(2 - math.sqrt(1 + eps / 16) - math.sqrt(eps) / 4)


def test_lemma_hull(unit_square, triangle):
    for p in (unit_square, gen_corner_deleted(0.1), triangle):
        r = check_lemma_hull(p)
        assert r.passed and r.lhs == pytest.approx(r.rhs)


def test_lemma_alpha(unit_square):
    r = check_lemma_alpha(unit_square)
    assert r.passed and r.lhs == 0 and r.rhs == 0
    r = check_lemma_alpha(gen_rectangle(0.1))
    assert r.passed and r.lhs == pytest.approx(0.01) and r.rhs == pytest.approx(0.01)
    recs = check_lemma_alpha_all(gen_staircase(12, 4, 0.9))
    assert [x.name for x in recs] == ["lemma_alpha.area", "lemma_alpha.perimeter", "lemma_alpha"]
    assert all(x.passed for x in recs)
    assert recs[-1].lhs < recs[-1].rhs


def test_lemma_excluded():
    r = check_lemma_excluded(gen_rectangle(0.1))
    assert r.skipped and r.passed
    r = check_lemma_excluded(gen_corner_deleted(0.1))
    assert not r.skipped and r.passed
    assert r.lhs == pytest.approx(0.96) and r.rhs == pytest.approx(0.96, abs=1e-6)


def test_lemma_mu(unit_square):
    r = check_lemma_mu(unit_square)
    assert r.passed and r.lhs == pytest.approx(1.0)
    r = check_lemma_mu(gen_rectangle(0.1))
    assert r.passed and r.lhs == pytest.approx(2 - 1.2 / math.sqrt(0.96))


def test_check_record_semantics():
    assert CheckRecord.compare("x", 1.0, 0.9, 0.1).passed
    assert not CheckRecord.compare("x", 1.0, 0.9, 0.05).passed


def test_full_report(unit_square):
    r = full_report(unit_square)
    assert r.passed and r.epsilon == 0 and r.q_ratio is None
    names = [c["name"] for c in r.to_dict()["checks"]]
    assert names == [
        "theorem_main",
        "prop_area",
        "lemma_hull",
        "lemma_alpha.area",
        "lemma_alpha.perimeter",
        "lemma_alpha",
        "lemma_excluded",
        "lemma_mu",
    ]
    r = full_report(gen_rectangle(0.15))
    assert r.passed and r.q_ratio == pytest.approx(1, abs=1e-5)


def test_report_json_fields():
    doc = full_report(gen_corner_deleted(0.2)).to_dict()
    for key in ("area", "perimeter", "epsilon", "ell", "alpha", "delta", "mu", "q_ratio", "checks"):
        assert key in doc
    assert set(doc["checks"][0]) == {"name", "lhs", "rhs", "slack", "passed", "skipped"}


def test_rectangle_family_monotone():
    eps = [measure(gen_rectangle(a)).epsilon for a in (0.05, 0.1, 0.2, 0.3)]
    assert all(a < b for a, b in zip(eps, eps[1:]))
