"""Polygons, axis-aligned rectangles and squares in the L1 plane.

Everything here is exact up to floating-point rounding: shoelace area, L1
perimeter (sum of |dx| + |dy| over edges), the tight bounding rectangle and
the area of a polygon clipped to an axis-aligned square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from l1iso import kernels
from l1iso.errors import (
    DegenerateArea,
    NonFiniteCoordinate,
    NonPositiveScale,
    ParseError,
    PolygonError,
    SelfIntersecting,
    TooFewVertices,
)

# Geometric predicate tolerance, in input length units.
TAU_GEO = 1e-9


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Polygon:
    """A validated simple polygon, counterclockwise, no repeated or collinear vertices.

    Build instances through :func:`validate_polygon`; the constructor itself
    does not check anything.
    """

    vertices: tuple[Point, ...]
    name: str | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @cached_property
    def xs(self) -> np.ndarray:
        a = np.array([v.x for v in self.vertices], dtype=np.float64)
        a.flags.writeable = False
        return a

    @cached_property
    def ys(self) -> np.ndarray:
        a = np.array([v.y for v in self.vertices], dtype=np.float64)
        a.flags.writeable = False
        return a

    def to_dict(self) -> dict:
        doc: dict = {}
        if self.name is not None:
            doc["name"] = self.name
        doc["vertices"] = [[v.x, v.y] for v in self.vertices]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Polygon":
        """Parse the interchange form ``{"name": str?, "vertices": [[x, y], ...]}``."""
        if not isinstance(doc, dict) or "vertices" not in doc:
            raise ParseError('polygon document must be an object with a "vertices" list')
        name = doc.get("name")
        if name is not None and not isinstance(name, str):
            raise ParseError('"name" must be a string')
        raw = doc["vertices"]
        if not isinstance(raw, list):
            raise ParseError('"vertices" must be a list of [x, y] pairs')
        return validate_polygon(raw, name=name)


@dataclass(frozen=True)
class Rect:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"empty rectangle {self}")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def center(self) -> Point:
        return Point(0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax))

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def l1_perimeter(self) -> float:
        return 2.0 * (self.width + self.height)


@dataclass(frozen=True)
class RectParams:
    """Sides of a rectangle written as ``ell - 2 alpha`` and ``ell + 2 alpha``."""

    ell: float
    alpha: float
    width: float
    height: float


@dataclass(frozen=True)
class Square:
    """Axis-aligned square with centre ``(cx, cy)`` and half-side ``r``."""

    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise ValueError(f"square half-side must be positive, got {self.r}")

    @property
    def side(self) -> float:
        return 2.0 * self.r

    @property
    def area(self) -> float:
        return 4.0 * self.r * self.r

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.cx - self.r, self.cy - self.r, self.cx + self.r, self.cy + self.r)

    def to_dict(self) -> dict:
        return {"cx": self.cx, "cy": self.cy, "r": self.r}


def _signed_area(pts: Sequence[tuple[float, float]]) -> float:
    acc = 0.0
    px, py = pts[-1]
    for qx, qy in pts:
        acc += px * qy - qx * py
        px, py = qx, qy
    return 0.5 * acc


def _merge_collinear(pts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        for i in range(n):
            ax, ay = pts[i - 1]
            vx, vy = pts[i]
            bx, by = pts[(i + 1) % n]
            e1x, e1y = vx - ax, vy - ay
            e2x, e2y = bx - vx, by - vy
            cross = e1x * e2y - e1y * e2x
            if abs(cross) <= TAU_GEO * math.hypot(e1x, e1y) * math.hypot(e2x, e2y):
                if e1x * e2x + e1y * e2y < 0.0:
                    raise SelfIntersecting(f"boundary folds back on itself at vertex {pts[i]}")
                del pts[i]
                changed = True
                break
    return pts


def _point_seg_dist(px, py, ax, ay, bx, by):
    """Euclidean distance from points (arrays) to segments (arrays)."""
    dx = bx - ax
    dy = by - ay
    ll = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(ll > 0, ((px - ax) * dx + (py - ay) * dy) / ll, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _check_simple(pts: list[tuple[float, float]]) -> None:
    n = len(pts)
    if n < 4:
        return
    arr = np.asarray(pts, dtype=float)
    ax, ay = arr[:, 0], arr[:, 1]
    bx, by = np.roll(ax, -1), np.roll(ay, -1)
    for i in range(n - 2):
        # edges j > i + 1, skipping the edge adjacent to i through the closing vertex
        j = np.arange(i + 2, n if i > 0 else n - 1)
        if j.size == 0:
            continue
        p1x, p1y, p2x, p2y = ax[i], ay[i], bx[i], by[i]
        q1x, q1y, q2x, q2y = ax[j], ay[j], bx[j], by[j]
        o1 = (p2x - p1x) * (q1y - p1y) - (p2y - p1y) * (q1x - p1x)
        o2 = (p2x - p1x) * (q2y - p1y) - (p2y - p1y) * (q2x - p1x)
        o3 = (q2x - q1x) * (p1y - q1y) - (q2y - q1y) * (p1x - q1x)
        o4 = (q2x - q1x) * (p2y - q1y) - (q2y - q1y) * (p2x - q1x)
        crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
        near = np.minimum.reduce(
            [
                _point_seg_dist(q1x, q1y, p1x, p1y, p2x, p2y),
                _point_seg_dist(q2x, q2y, p1x, p1y, p2x, p2y),
                _point_seg_dist(p1x, p1y, q1x, q1y, q2x, q2y),
                _point_seg_dist(p2x, p2y, q1x, q1y, q2x, q2y),
            ]
        )
        bad = crossing | (near <= TAU_GEO)
        if bad.any():
            k = int(j[np.argmax(bad)])
            raise SelfIntersecting(f"edges {i} and {k} intersect")


def validate_polygon(raw_vertices: Iterable, name: str | None = None) -> Polygon:
    """Normalise raw ``[(x, y), ...]`` input into a simple CCW :class:`Polygon`.

    A repeated closing vertex and zero-length edges are dropped, collinear runs
    are merged and clockwise input is reversed.  Raises
    :class:`TooFewVertices`, :class:`NonFiniteCoordinate`,
    :class:`DegenerateArea` or :class:`SelfIntersecting`.
    """
    pts: list[tuple[float, float]] = []
    for k, v in enumerate(raw_vertices):
        try:
            x, y = v
            x, y = float(x), float(y)
        except (TypeError, ValueError) as exc:
            raise PolygonError(f"vertex {k} is not an (x, y) pair: {v!r}") from exc
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFiniteCoordinate(f"vertex {k} has a non-finite coordinate: {v!r}")
        pts.append((x, y))
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")

    deduped: list[tuple[float, float]] = []
    for p in pts:
        if deduped and abs(p[0] - deduped[-1][0]) + abs(p[1] - deduped[-1][1]) <= TAU_GEO:
            continue
        deduped.append(p)
    while len(deduped) > 1 and (
        abs(deduped[0][0] - deduped[-1][0]) + abs(deduped[0][1] - deduped[-1][1]) <= TAU_GEO
    ):
        deduped.pop()
    if len(deduped) < 3:
        raise DegenerateArea("fewer than 3 distinct vertices")

    arr = np.asarray(deduped)
    rel = arr - arr[0]
    far = rel[int(np.argmax(np.hypot(rel[:, 0], rel[:, 1])))]
    diam = float(np.hypot(far[0], far[1]))
    if np.max(np.abs(far[0] * rel[:, 1] - far[1] * rel[:, 0])) <= TAU_GEO * diam:
        raise DegenerateArea("all vertices are collinear")
    # a bowtie has zero signed area, so simplicity is decided first
    _check_simple(deduped)
    signed = _signed_area(deduped)
    if abs(signed) <= TAU_GEO * diam * diam:
        raise DegenerateArea(f"polygon area {signed!r} is below tolerance")
    if signed < 0:
        deduped.reverse()

    merged = _merge_collinear(deduped)
    if len(merged) < 3:
        raise DegenerateArea("polygon collapses to a segment")
    return Polygon(tuple(Point(x, y) for x, y in merged), name)


def area(p: Polygon) -> float:
    """Shoelace area."""
    return _signed_area(p.vertices)


def l1_perimeter(p: Polygon) -> float:
    verts = p.vertices
    total = 0.0
    px, py = verts[-1]
    for qx, qy in verts:
        total += abs(qx - px) + abs(qy - py)
        px, py = qx, qy
    return total


def bounding_rect(p: Polygon) -> Rect:
    return Rect(float(p.xs.min()), float(p.ys.min()), float(p.xs.max()), float(p.ys.max()))


def rect_params(r: Rect) -> RectParams:
    w, h = sorted((r.width, r.height))
    return RectParams(ell=0.5 * (w + h), alpha=0.25 * (h - w), width=w, height=h)


@dataclass(frozen=True)
class Transform:
    """An L1 isometry or a homothety; build with the helpers below."""

    kind: str
    dx: float = 0.0
    dy: float = 0.0
    factor: float = 1.0

    def apply(self, x: float, y: float) -> tuple[float, float]:
        k = self.kind
        if k == "translate":
            return x + self.dx, y + self.dy
        if k == "reflect_x":
            return -x, y
        if k == "reflect_y":
            return x, -y
        if k == "swap_xy":
            return y, x
        if k == "scale":
            return x * self.factor, y * self.factor
        raise ValueError(f"unknown transform {k!r}")

    @property
    def flips_orientation(self) -> bool:
        return self.kind in ("reflect_x", "reflect_y", "swap_xy")

    def __str__(self) -> str:
        if self.kind == "translate":
            return f"translate({self.dx:g},{self.dy:g})"
        if self.kind == "scale":
            return f"scale({self.factor:g})"
        return self.kind


def translate(dx: float, dy: float) -> Transform:
    return Transform("translate", dx=float(dx), dy=float(dy))


def reflect_x() -> Transform:
    """Mirror ``x -> -x``."""
    return Transform("reflect_x")


def reflect_y() -> Transform:
    """Mirror ``y -> -y``."""
    return Transform("reflect_y")


def swap_xy() -> Transform:
    return Transform("swap_xy")


def scale(factor: float) -> Transform:
    if not factor > 0.0:
        raise NonPositiveScale(f"scale factor must be positive, got {factor}")
    return Transform("scale", factor=float(factor))


def transform(p: Polygon, t: Transform | Sequence[Transform]) -> Polygon:
    """Apply one transform (or a sequence, left to right); result stays CCW."""
    if isinstance(t, Transform):
        t = (t,)
    verts = [tuple(v) for v in p.vertices]
    for step in t:
        if step.kind == "scale" and not step.factor > 0.0:
            raise NonPositiveScale(f"scale factor must be positive, got {step.factor}")
        verts = [step.apply(x, y) for x, y in verts]
        if step.flips_orientation:
            verts.reverse()
    return Polygon(tuple(Point(x, y) for x, y in verts), p.name)


def clip_to_square(p: Polygon, s: Square) -> float:
    """Area of ``p`` intersected with ``s``."""
    x0, y0, x1, y1 = s.bounds
    return kernels.clip_rect_area(p.xs, p.ys, x0, y0, x1, y1)
