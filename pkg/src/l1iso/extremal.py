"""Extremal shape families, their closed forms, and random test corpora."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from l1iso.errors import GenerationFailed, ParamOutOfRange, ParseError, PolygonError
from l1iso.geometry import Polygon, Transform, transform, validate_polygon

FAMILIES = ("corner_deleted", "rectangle")
_ALIASES = {
    "corner": "corner_deleted",
    "corner_deleted": "corner_deleted",
    "rect": "rectangle",
    "rectangle": "rectangle",
}
_SHORT = {"corner_deleted": "corner", "rectangle": "rect"}

# Staircase corpora use this jitter unless told otherwise.
CORPUS_JITTER = 0.9


@dataclass(frozen=True)
class FamilySpec:
    family: str
    param: float
    scale: float = 1.0
    placement: tuple[Transform, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParamOutOfRange(f"unknown family {self.family!r}")
        if not 0.0 < self.param < 0.5:
            raise ParamOutOfRange(f"family parameter must lie in (0, 0.5), got {self.param}")
        if not self.scale > 0.0:
            raise ParamOutOfRange(f"scale must be positive, got {self.scale}")

    @property
    def label(self) -> str:
        return f"{_SHORT[self.family]}:{self.param:g}"


@dataclass(frozen=True)
class ClosedForm:
    area: float
    perimeter: float
    epsilon: float
    delta_expected: float
    mu_expected: float | None


def _scaled(pts, s: float, name: str) -> Polygon:
    return validate_polygon([(x * s, y * s) for x, y in pts], name=name)


def gen_corner_deleted(delta: float, scale: float = 1.0) -> Polygon:
    """Unit square minus a ``2 delta`` square at the top-left corner."""
    if not 0.0 < delta < 0.5:
        raise ParamOutOfRange(f"delta must lie in (0, 0.5), got {delta}")
    if not scale > 0.0:
        raise ParamOutOfRange(f"scale must be positive, got {scale}")
    d2 = 2.0 * delta
    pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (d2, 1.0), (d2, 1.0 - d2), (0.0, 1.0 - d2)]
    return _scaled(pts, scale, f"corner:{delta:g}")


def gen_rectangle(alpha: float, scale: float = 1.0) -> Polygon:
    """``(1 - 2 alpha) x (1 + 2 alpha)`` rectangle with a corner at the origin."""
    if not 0.0 <= alpha < 0.5:
        raise ParamOutOfRange(f"alpha must lie in [0, 0.5), got {alpha}")
    if not scale > 0.0:
        raise ParamOutOfRange(f"scale must be positive, got {scale}")
    w, h = 1.0 - 2.0 * alpha, 1.0 + 2.0 * alpha
    return _scaled([(0.0, 0.0), (w, 0.0), (w, h), (0.0, h)], scale, f"rect:{alpha:g}")


def gen_family(spec: FamilySpec) -> Polygon:
    make = gen_corner_deleted if spec.family == "corner_deleted" else gen_rectangle
    p = make(spec.param, spec.scale)
    if spec.placement:
        p = transform(p, spec.placement)
    return p


def closed_form(spec: FamilySpec | tuple[str, float, float]) -> ClosedForm:
    """Expected area, perimeter, deficit, distance and overlap for a family member.

    Accepts a :class:`FamilySpec` or a bare ``(family, param, scale)`` triple;
    the triple form allows ``param == 0`` for the rectangle family.
    """
    if isinstance(spec, FamilySpec):
        family, p, s = spec.family, spec.param, spec.scale
    else:
        family, p, s = spec
        family = _ALIASES.get(family, family)
        lo = 0.0 if family == "rectangle" else math.nextafter(0.0, 1.0)
        if family not in FAMILIES or not lo <= p < 0.5 or not s > 0.0:
            raise ParamOutOfRange(f"invalid family member {spec!r}")
    q = 1.0 - 4.0 * p * p
    mu = None
    if family == "rectangle":
        mu = (1.0 - 2.0 * p) / math.sqrt(q)
    return ClosedForm(
        area=q * s * s,
        perimeter=4.0 * s,
        epsilon=64.0 * p * p / q,
        delta_expected=p * s,
        mu_expected=mu,
    )


def parse_family(text: str) -> tuple[str, float | None]:
    """``"corner:0.1"`` -> ``("corner_deleted", 0.1)``; a bare name gives ``None``."""
    name, _, rest = text.strip().partition(":")
    family = _ALIASES.get(name.strip().lower())
    if family is None:
        raise ParseError(f"unknown family {name!r}; expected corner or rect")
    if not rest:
        return family, None
    try:
        return family, float(rest)
    except ValueError as exc:
        raise ParseError(f"bad family parameter in {text!r}") from exc


def _rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise ParamOutOfRange(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.Philox(key=int(seed)))


def _breaks(rng, n: int, jitter: float) -> np.ndarray:
    """n + 1 increasing fractions from 0 to 1, interior ones jittered."""
    t = np.arange(n + 1, dtype=float) / n
    t[1:-1] += jitter * rng.uniform(-0.4, 0.4, size=n - 1) / n
    return t


def gen_staircase(seed: int, n_steps: int, jitter: float) -> Polygon:
    """Rectangle with a monotone staircase notch cut from its top-right corner.

    With ``jitter == 0`` the box is the unit square and the steps are even;
    ``n_steps == 1`` then reduces to a corner-deleted square.  Larger jitter
    narrows the box, unbalances the notch and moves the step corners.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise ParamOutOfRange(f"n_steps must be a positive integer, got {n_steps}")
    if not 0.0 <= jitter <= 1.0:
        raise ParamOutOfRange(f"jitter must lie in [0, 1], got {jitter}")
    n = int(n_steps)
    rng = _rng(seed)
    for _ in range(16):
        w = 1.0 - 0.3 * jitter * rng.uniform()
        base = rng.uniform(0.15, 0.5)
        a = min(base * (1.0 + 0.3 * jitter * rng.uniform(-1.0, 1.0)), 0.9 * w)
        b = min(base * (1.0 + 0.3 * jitter * rng.uniform(-1.0, 1.0)), 0.9)
        tx = _breaks(rng, n, jitter)
        ty = _breaks(rng, n, jitter)
        xs = w - a * tx
        ys = 1.0 - b + b * ty
        pts = [(0.0, 0.0), (w, 0.0)]
        for i in range(n):
            pts.append((float(xs[i]), float(ys[i])))
            pts.append((float(xs[i + 1]), float(ys[i])))
        pts.append((float(xs[n]), 1.0))
        pts.append((0.0, 1.0))
        try:
            return validate_polygon(pts, name=f"staircase:{seed}")
        except PolygonError:
            continue
    raise GenerationFailed(f"staircase generation failed for seed {seed}")


def staircase_corpus(seed: int, count: int, jitter: float = CORPUS_JITTER) -> list[Polygon]:
    """Seeds ``seed .. seed + count - 1`` with step counts cycling through 1..8."""
    if count < 0:
        raise ParamOutOfRange(f"count must be non-negative, got {count}")
    return [gen_staircase(s, 1 + s % 8, jitter) for s in range(seed, seed + count)]


def gen_sandwich(seed: int, r1: float, r2: float, notches: int = 6) -> Polygon:
    """Square ``[-r2, r2]^2`` with rectangular bites that all miss ``[-r1, r1]^2``.

    Each side gets up to ``notches`` disjoint bites of depth at most
    ``r2 - r1`` inside its middle stretch, and each corner may lose a block.
    The result contains the square of half-side ``r1`` and is contained in
    the one of half-side ``r2``, both centred at the origin.
    """
    if not 0.0 < r1 < r2:
        raise ParamOutOfRange(f"need 0 < r1 < r2, got r1={r1}, r2={r2}")
    rng = _rng(seed)
    gap = r2 - r1
    # bottom side as (along, inward) offsets, rotated to the other three sides
    sides = []
    for _ in range(4):
        k = int(rng.integers(0, notches + 1))
        cuts = np.sort(rng.uniform(-r1 * 0.98, r1 * 0.98, size=2 * k))
        bites = []
        for j in range(k):
            u, v = cuts[2 * j], cuts[2 * j + 1]
            if v - u > 1e-3 * r2:
                bites.append((float(u), float(v), float(rng.uniform(0.05, 1.0) * gap)))
        corner = None
        if rng.uniform() < 0.5:
            corner = (float(rng.uniform(0.05, 0.9) * gap), float(rng.uniform(0.05, 0.9) * gap))
        sides.append((bites, corner))

    pts: list[tuple[float, float]] = []
    # rotation taking the bottom side to side k, counterclockwise
    rots = [lambda s, t: (s, t), lambda s, t: (-t, s), lambda s, t: (-s, -t), lambda s, t: (t, -s)]
    for k, (bites, corner) in enumerate(sides):
        rot = rots[k]
        # start corner of this side is (-r2, -r2) in local frame
        if corner is None:
            local = [(-r2, -r2)]
        else:
            cx, cy = corner
            local = [(-r2, -r2 + cy), (-r2 + cx, -r2 + cy), (-r2 + cx, -r2)]
        for u, v, d in bites:
            local += [(u, -r2), (u, -r2 + d), (v, -r2 + d), (v, -r2)]
        pts += [rot(s, t) for s, t in local]
    return validate_polygon(pts, name=f"sandwich:{seed}")
