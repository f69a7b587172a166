"""Isoperimetric deficit and the per-shape inequality checks.

Every check is ``lhs <= rhs + slack``.  The slack is never a fixed fudge: it
is the worst case the fitting certificates allow, plus a rounding term that
is a small relative multiple of the quantities compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from l1iso.errors import NegativeBeyondTolerance
from l1iso.fitting import FitResult, OverlapFit, fit_square_hausdorff, fit_square_overlap
from l1iso.geometry import Polygon, area, bounding_rect, l1_perimeter, rect_params

TAU_EPS = 1e-9
# relative rounding allowance for closed-form comparisons
FP_REL = 1e-12


def _fp(*xs: float) -> float:
    return FP_REL * max(1.0, *(abs(x) for x in xs))


def _deficit_from(perimeter: float, a: float) -> float:
    eps = perimeter * perimeter / a - 16.0
    if eps < -TAU_EPS:
        raise NegativeBeyondTolerance(f"deficit {eps!r} is below -{TAU_EPS}")
    return max(0.0, eps)


def deficit(a: Polygon) -> float:
    """Smallest eps with perimeter**2 <= (16 + eps) * area."""
    return _deficit_from(l1_perimeter(a), area(a))


@dataclass(frozen=True)
class CheckRecord:
    name: str
    lhs: float
    rhs: float
    slack_budget: float
    passed: bool
    skipped: bool = False

    @classmethod
    def compare(cls, name: str, lhs: float, rhs: float, slack: float) -> "CheckRecord":
        lhs, rhs, slack = float(lhs), float(rhs), float(slack)
        return cls(name, lhs, rhs, slack, bool(lhs <= rhs + slack))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack_budget,
            "passed": self.passed,
            "skipped": self.skipped,
        }


@dataclass(frozen=True)
class Measurements:
    """Everything the checks consume, computed once per polygon."""

    area: float
    perimeter: float
    epsilon: float
    ell: float
    alpha: float
    width: float
    height: float
    fit: FitResult | None
    overlap: OverlapFit | None

    @property
    def delta(self) -> float:
        return self.fit.delta

    @property
    def mu(self) -> float:
        return self.overlap.mu


def measure(a: Polygon, tol: float = 1e-5, resolution: float | None = None) -> Measurements:
    ar = area(a)
    per = l1_perimeter(a)
    rp = rect_params(bounding_rect(a))
    return Measurements(
        area=ar,
        perimeter=per,
        epsilon=_deficit_from(per, ar),
        ell=rp.ell,
        alpha=rp.alpha,
        width=rp.width,
        height=rp.height,
        fit=fit_square_hausdorff(a, tol, resolution),
        overlap=fit_square_overlap(a, tol),
    )


def _q(m: Measurements) -> float | None:
    if m.epsilon <= TAU_EPS:
        return None
    return 64.0 * m.delta**2 / (m.epsilon * m.area)


def equality_ratio(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> float | None:
    """64 delta**2 / (eps * area), or None when the deficit vanishes."""
    return _q(m or measure(a, tol))


def prop2_bound(eps: float) -> float:
    return min(1.0 - eps / 16.0, 2.0 - math.sqrt(1.0 + eps / 16.0) - math.sqrt(eps) / 4.0)


def check_theorem_main(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> CheckRecord:
    m = m or measure(a, tol)
    d, g = m.delta, m.fit.optimality_gap
    lhs = d * d
    rhs = m.epsilon * m.area / 64.0
    # eps carries an absolute rounding error of a few ulps of (16 + eps)
    fp = _fp(lhs) * lhs + FP_REL * (16.0 + m.epsilon) * m.area
    return CheckRecord.compare("theorem_main", lhs, rhs, 2.0 * d * g + g * g + fp)


def check_prop_area(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> CheckRecord:
    m = m or measure(a, tol)
    lhs = prop2_bound(m.epsilon)
    return CheckRecord.compare(
        "prop_area", lhs, m.mu, m.overlap.optimality_gap + FP_REL * (1.0 + m.epsilon)
    )


def check_lemma_hull(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> CheckRecord:
    if m is None:
        lhs = 4.0 * rect_params(bounding_rect(a)).ell
        rhs = l1_perimeter(a)
    else:
        lhs, rhs = 4.0 * m.ell, m.perimeter
    return CheckRecord.compare("lemma_hull", lhs, rhs, _fp(lhs, rhs) * max(lhs, rhs))


def _lemma_alpha_records(m: Measurements) -> list[CheckRecord]:
    ell2 = m.ell * m.ell
    upper = (16.0 + m.epsilon) / 16.0 * m.area
    a2 = m.alpha * m.alpha
    rhs = m.epsilon * m.area / 64.0
    return [
        CheckRecord.compare("lemma_alpha.area", m.area, ell2, FP_REL * max(m.area, ell2)),
        CheckRecord.compare("lemma_alpha.perimeter", ell2, upper, FP_REL * max(ell2, upper)),
        CheckRecord.compare(
            "lemma_alpha", a2, rhs, FP_REL * max(a2, rhs) + FP_REL * (16.0 + m.epsilon) * m.area
        ),
    ]


def check_lemma_alpha(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> CheckRecord:
    """alpha**2 <= eps * area / 64; the two-sided ell bound is in :func:`check_lemma_alpha_all`."""
    if m is None:
        m = _geometry_only(a)
    return _lemma_alpha_records(m)[-1]


def check_lemma_alpha_all(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> list[CheckRecord]:
    if m is None:
        m = _geometry_only(a)
    return _lemma_alpha_records(m)


def _excluded_bound(m: Measurements, d: float) -> float:
    base = m.ell * m.ell - 4.0 * m.alpha * m.alpha
    return base - min(8.0 * d * (d - m.alpha), 4.0 * d * d)


def check_lemma_excluded(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> CheckRecord:
    """Area bound that applies once delta certifiably exceeds alpha; skipped otherwise."""
    m = m or measure(a, tol)
    d, g = m.delta, m.fit.optimality_gap
    fp = FP_REL * m.ell * m.ell * 16.0
    rhs = _excluded_bound(m, d)
    if d - g <= m.alpha + fp:
        return CheckRecord("lemma_excluded", m.area, rhs, 0.0, True, skipped=True)
    # the bound decreases in delta, and the true minimum is at least d - g
    slack = _excluded_bound(m, d - g) - rhs + fp
    return CheckRecord.compare("lemma_excluded", m.area, rhs, slack)


def check_lemma_mu(a: Polygon, tol: float = 1e-5, m: Measurements | None = None) -> CheckRecord:
    m = m or measure(a, tol)
    lhs = min(2.0 - m.width * m.height / m.area, 2.0 - m.height / math.sqrt(m.area))
    return CheckRecord.compare(
        "lemma_mu", lhs, m.mu, m.overlap.optimality_gap + FP_REL * (2.0 + abs(lhs))
    )


def _geometry_only(a: Polygon) -> Measurements:
    """Measurements without the fits, for the purely geometric checks."""
    ar = area(a)
    per = l1_perimeter(a)
    rp = rect_params(bounding_rect(a))
    return Measurements(ar, per, _deficit_from(per, ar), rp.ell, rp.alpha, rp.width, rp.height, None, None)


@dataclass(frozen=True)
class IsoReport:
    area: float
    perimeter: float
    epsilon: float
    ell: float
    alpha: float
    delta: float
    mu: float
    q_ratio: float | None
    checks: list[CheckRecord] = field(default_factory=list)
    name: str | None = None
    delta_gap: float = 0.0
    mu_gap: float = 0.0
    square: tuple[float, float, float] | None = None
    overlap_square: tuple[float, float, float] | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def asymmetry(self) -> float:
        return 2.0 * (1.0 - self.mu)

    @property
    def asymmetry_reference(self) -> float:
        return math.sqrt(self.epsilon) / 2.0

    @property
    def asymmetry_ratio(self) -> float | None:
        ref = self.asymmetry_reference
        return None if self.epsilon <= TAU_EPS else self.asymmetry / ref

    def to_dict(self) -> dict:
        doc: dict = {}
        if self.name is not None:
            doc["name"] = self.name
        doc.update(
            area=self.area,
            perimeter=self.perimeter,
            epsilon=self.epsilon,
            ell=self.ell,
            alpha=self.alpha,
            delta=self.delta,
            delta_gap=self.delta_gap,
            mu=self.mu,
            mu_gap=self.mu_gap,
            q_ratio=self.q_ratio,
            asymmetry=self.asymmetry,
            asymmetry_reference=self.asymmetry_reference,
            prop2_bound=prop2_bound(self.epsilon),
            square=list(self.square) if self.square else None,
            overlap_square=list(self.overlap_square) if self.overlap_square else None,
            passed=self.passed,
            checks=[c.to_dict() for c in self.checks],
        )
        return doc


def full_report(a: Polygon, tol: float = 1e-5, resolution: float | None = None) -> IsoReport:
    """Measure once, then run every check in a fixed order."""
    m = measure(a, tol, resolution)
    checks = [
        check_theorem_main(a, tol, m),
        check_prop_area(a, tol, m),
        check_lemma_hull(a, tol, m),
        *check_lemma_alpha_all(a, tol, m),
        check_lemma_excluded(a, tol, m),
        check_lemma_mu(a, tol, m),
    ]
    sq, osq = m.fit.square, m.overlap.square
    return IsoReport(
        area=m.area,
        perimeter=m.perimeter,
        epsilon=m.epsilon,
        ell=m.ell,
        alpha=m.alpha,
        delta=m.delta,
        mu=m.mu,
        q_ratio=_q(m),
        checks=checks,
        name=a.name,
        delta_gap=m.fit.optimality_gap,
        mu_gap=m.overlap.optimality_gap,
        square=(sq.cx, sq.cy, sq.r),
        overlap_square=(osq.cx, osq.cy, osq.r),
    )
