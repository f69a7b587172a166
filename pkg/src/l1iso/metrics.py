"""L-infinity distances between points, squares and filled polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass

from l1iso import kernels
from l1iso.errors import EvaluationBudgetExceeded, NonPositiveResolution
from l1iso.geometry import Point, Polygon, Square, area

# Cells explored per Hausdorff evaluation before giving up.
MAX_CELLS = 2_000_000


@dataclass(frozen=True)
class CertifiedValue:
    """``value`` is a lower bound; the true quantity lies in ``[value, value + upper_gap]``."""

    value: float
    upper_gap: float

    def __post_init__(self):
        if not (self.upper_gap >= 0.0 and math.isfinite(self.upper_gap) and math.isfinite(self.value)):
            raise ValueError(f"invalid certificate {self}")

    @property
    def upper(self) -> float:
        return self.value + self.upper_gap


def dist_linf_point_to_square(p: Point, s: Square) -> float:
    x, y = p
    return max(0.0, max(abs(x - s.cx), abs(y - s.cy)) - s.r)


def dist_linf_point_to_polygon(p: Point, a: Polygon) -> float:
    x, y = p
    return kernels.dist_point_polygon(a.xs, a.ys, float(x), float(y))


def excess_over_square(a: Polygon, s: Square) -> float:
    """sup over A of dist(., S); exact because the distance is convex."""
    dx = abs(a.xs - s.cx)
    dy = abs(a.ys - s.cy)
    return max(0.0, float(max(dx.max(), dy.max())) - s.r)


def square_excess_bounds(a: Polygon, s: Square, floor: float, threshold: float, eps: float):
    """Branch-and-bound bounds ``(lo, hi, cells)`` on sup over S of dist(., A)."""
    x0, y0, x1, y1 = s.bounds
    return kernels.box_sup_dist(a.xs, a.ys, x0, y0, x1, y1, floor, threshold, eps, MAX_CELLS)


def hausdorff_linf(a: Polygon, s: Square, resolution: float | None = None) -> CertifiedValue:
    """Certified L-infinity Hausdorff distance between filled ``a`` and ``s``.

    The polygon-to-square direction is evaluated exactly at the vertices.
    The square-to-polygon direction uses the 1-Lipschitz property of the
    distance field: cells of the square are refined best-first until no cell
    can beat the running maximum by more than ``resolution``.
    """
    if resolution is None:
        resolution = 1e-6 * math.sqrt(area(a))
    if not resolution > 0.0:
        raise NonPositiveResolution(f"resolution must be positive, got {resolution}")
    h1 = excess_over_square(a, s)
    lo, hi, _ = square_excess_bounds(a, s, h1, math.inf, resolution)
    value = max(h1, lo)
    upper = max(h1, hi)
    if upper - value > resolution:
        raise EvaluationBudgetExceeded(
            f"Hausdorff bound stalled at gap {upper - value:.3g} > {resolution:.3g}"
        )
    return CertifiedValue(value, upper - value)
