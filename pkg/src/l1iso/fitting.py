"""Certified square fitting: closest square in d-infinity, best equal-area overlap.

The Hausdorff fit uses a reduction to one dimension.  Orient the polygon so
its bounding rectangle has width ``W <= H``.  Any square can be replaced by a
sub-square centred at height ``cy0`` (mid-height of the rectangle), with
``cx`` in ``I = [xmax - H/2, xmin + H/2]`` and half-side ``r <= H/2``,
without increasing the distance.  For such squares the polygon-to-square
excess is exactly ``H/2 - r``, and the square-to-polygon excess grows with
``r``, so for fixed ``cx`` the best ``r`` is found by bisection.  The
resulting ``delta(cx)`` is 1-Lipschitz and is minimised by a 1-D branch and
bound that carries a global lower bound.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass

import numpy as np

from l1iso import kernels
from l1iso.errors import (
    EvaluationBudgetExceeded,
    GridTooFine,
    NonPositiveResolution,
    NonPositiveTolerance,
)
from l1iso.geometry import Polygon, Square, area, bounding_rect, rect_params, swap_xy, transform
from l1iso.metrics import hausdorff_linf

DEFAULT_BUDGET = 10_000_000


def eval_budget() -> int:
    raw = os.environ.get("ISO_L1_EVAL_BUDGET")
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    value = int(float(raw))
    if value <= 0:
        raise ValueError(f"ISO_L1_EVAL_BUDGET must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class FitResult:
    """Best square found; the true minimum lies in ``[delta - optimality_gap, delta]``."""

    square: Square
    delta: float
    optimality_gap: float
    evaluations: int


@dataclass(frozen=True)
class OverlapFit:
    """Best equal-area square; the true maximum lies in ``[mu, mu + optimality_gap]``."""

    square: Square
    mu: float
    optimality_gap: float
    evaluations: int


def _check_tol(tol: float) -> None:
    if not tol > 0.0:
        raise NonPositiveTolerance(f"tolerance must be positive, got {tol}")


def compass_search(f, x0: float, lo: float, hi: float, step: float, min_step: float):
    """Minimise ``f`` on ``[lo, hi]`` from ``x0`` by a 1-D compass search.

    ``f`` returns a comparable score.  Returns ``(x, f(x))`` for the last
    accepted point.  Steps halve after every unsuccessful poll.
    """
    x, fx = x0, f(x0)
    while step > min_step:
        moved = False
        for cand in (x - step, x + step):
            cand = min(max(cand, lo), hi)
            if cand == x:
                continue
            fc = f(cand)
            if fc < fx:
                x, fx, moved = cand, fc, True
                break
        if not moved:
            step *= 0.5
    return x, fx


@dataclass
class _Slice:
    lb: float  # certified lower bound on delta(cx)
    ub: float  # certified upper bound, attained by (cx, r_a)
    r_a: float
    r_b: float


class _HausdorffSearch:
    def __init__(self, work: Polygon, tol: float, budget: int):
        self.xs = np.ascontiguousarray(work.xs)
        self.ys = np.ascontiguousarray(work.ys)
        box = bounding_rect(work)
        self.box = box
        self.h2 = 0.5 * box.height
        self.cy0 = 0.5 * (box.ymin + box.ymax)
        self.eps = tol / 64.0
        self.width = tol / 256.0
        self.margin = tol / 32.0
        self.budget = budget
        self.count = 0
        self.cache: dict[float, _Slice] = {}

    def _spend(self, cells: int) -> int:
        self.count += cells
        if self.count > self.budget:
            raise EvaluationBudgetExceeded(
                f"Hausdorff fit used {self.count} evaluations (cap {self.budget})"
            )
        return self.budget - self.count

    def _probe(self, x0, y0, x1, y1, theta, eps, max_cells=None):
        left = self.budget - self.count
        cap = left if max_cells is None else min(left, max_cells)
        lo, hi, cells = kernels.box_sup_dist(
            self.xs, self.ys, x0, y0, x1, y1, theta, theta, eps, max(cap, 1)
        )
        self._spend(cells)
        return lo, hi

    def decide(self, cx: float, r: float):
        """Compare g = sup over square(cx, r) of dist(., A) with theta = H/2 - r.

        Returns ``(True, hi)`` when g >= theta - eps/2 and ``(False, hi)``
        when g <= hi <= theta + eps.  Both answers are valid inside the band,
        so the search never has to resolve g exactly at theta.
        """
        theta = self.h2 - r
        low = theta - 0.5 * self.eps
        lo, hi = self._probe(cx - r, self.cy0 - r, cx + r, self.cy0 + r, low, 1.5 * self.eps)
        if lo >= low:
            return True, hi
        if hi > theta + self.eps * 1.0000001:
            raise EvaluationBudgetExceeded("Hausdorff decision did not converge within the cap")
        return False, hi

    def slice(self, cx: float, guess: tuple[float, float] | None = None) -> _Slice:
        hit = self.cache.get(cx)
        if hit is not None:
            return hit
        h2 = self.h2
        r_a, r_b = 0.0, h2
        ub = h2  # limit of tiny squares; see module docstring
        if guess is not None:
            for r in guess:
                if r_a < r < r_b:
                    above, hi = self.decide(cx, r)
                    if above:
                        r_b = r
                    else:
                        r_a, ub = r, max(h2 - r, hi)
        while r_b - r_a > self.width:
            r = 0.5 * (r_a + r_b)
            above, hi = self.decide(cx, r)
            if above:
                r_b = r
            else:
                r_a, ub = r, max(h2 - r, hi)
        out = _Slice(lb=max(0.0, h2 - r_b - 0.5 * self.eps), ub=ub, r_a=r_a, r_b=r_b)
        self.cache[cx] = out
        return out

    def slice_near(self, cx: float, est_lo: float, est_hi: float) -> _Slice:
        """Slice with a warm-start bracket from a delta estimate."""
        pad = self.width + self.eps
        g = (self.h2 - est_hi - pad, self.h2 - est_lo + pad)
        return self.slice(cx, g)

    def interval_excluded(self, a: float, b: float, tau: float) -> bool:
        """Prove delta(cx) >= tau for every cx in [a, b] with one probe."""
        rs = self.h2 - tau
        if rs <= 0.0 or b - a > 2.0 * rs:
            return False
        # every square centred in [a, b] with r >= rs contains this box
        lo, _ = self._probe(
            b - rs, self.cy0 - rs, a + rs, self.cy0 + rs, tau, self.eps, max_cells=4096
        )
        return lo >= tau

    def run(self):
        box = self.box
        p = box.xmax - self.h2
        q = box.xmin + self.h2
        if p > q:  # rounding when W == H
            p = q = 0.5 * (box.xmin + box.xmax)
        c0 = min(max(0.5 * (box.xmin + box.xmax), p), q)
        ell = rect_params(box).ell

        def score(cx):
            s = self.slice_near(cx, *self._estimate(cx))
            return (s.ub, cx)

        best_c, _ = compass_search(score, c0, p, q, ell / 8.0, self.width)
        best = self.cache[best_c]
        best_ub, best_cx = best.ub, best_c

        def offer(cx, s):
            nonlocal best_ub, best_cx
            if s.ub < best_ub or (s.ub == best_ub and cx < best_cx):
                best_ub, best_cx = s.ub, cx

        for cx, s in self.cache.items():
            offer(cx, s)
        if q - p <= 1e-15 * (1.0 + abs(p) + abs(q)):
            s = self.slice(p)
            offer(p, s)
            return best_cx, min(s.lb, best_ub)

        sp = self.slice_near(p, *self._estimate(p))
        sq = self.slice_near(q, *self._estimate(q))
        offer(p, sp)
        offer(q, sq)
        heap = [(_shubert(sp.lb, sq.lb, q - p), p, q)]
        global_lb = math.inf
        while heap:
            lb, a, b = heapq.heappop(heap)
            tau = best_ub - self.margin
            if lb >= tau:
                global_lb = min(global_lb, lb)
                break
            if self.interval_excluded(a, b, tau):
                global_lb = min(global_lb, tau)
                continue
            m = 0.5 * (a + b)
            if not a < m < b:
                global_lb = min(global_lb, lb)
                continue
            sa, sb = self.cache[a], self.cache[b]
            half = 0.5 * (b - a)
            est_lo = max(sa.lb, sb.lb) - half
            est_hi = min(sa.ub, sb.ub) + half
            sm = self.slice_near(m, est_lo, est_hi)
            offer(m, sm)
            heapq.heappush(heap, (_shubert(sa.lb, sm.lb, m - a), a, m))
            heapq.heappush(heap, (_shubert(sm.lb, sb.lb, b - m), m, b))
        for lb, _, _ in heap:
            global_lb = min(global_lb, lb)
        return best_cx, min(global_lb, best_ub)

    def _estimate(self, cx: float) -> tuple[float, float]:
        """Bracket for delta(cx) from the nearest cached slice (1-Lipschitz)."""
        if not self.cache:
            return 0.0, self.h2
        near = min(self.cache, key=lambda c: (abs(c - cx), c))
        s = self.cache[near]
        d = abs(near - cx)
        return max(0.0, s.lb - d), s.ub + d


def _shubert(la: float, lb: float, length: float) -> float:
    """Lower bound of a 1-Lipschitz function on an interval from endpoint bounds."""
    return max(0.5 * (la + lb - length), la - length, lb - length)


def fit_square_hausdorff(a: Polygon, tol: float = 1e-5, resolution: float | None = None) -> FitResult:
    """Square minimising the L-infinity Hausdorff distance to ``a``.

    ``delta`` is a certified upper bound on d(a, square) and
    ``delta - optimality_gap`` a certified lower bound on the minimum over all
    squares; the gap is at most ``tol``.  ``resolution`` caps the grid
    spacing used to certify the final square.
    """
    _check_tol(tol)
    if resolution is not None and not resolution > 0.0:
        raise NonPositiveResolution(f"resolution must be positive, got {resolution}")
    box = bounding_rect(a)
    swapped = box.width > box.height
    work = transform(a, swap_xy()) if swapped else a
    search = _HausdorffSearch(work, tol, eval_budget())
    cx, global_lb = search.run()
    s = search.cache[cx]

    candidates = [r for r in (s.r_b, s.r_a) if r > 0.0]
    if s.r_b >= search.h2 - search.eps:
        # the decision band can stop just short of the full-height square
        candidates.insert(0, search.h2)
    best = None
    for r in candidates:
        sq = Square(cx, search.cy0, r)
        res = search.eps / 4.0 if resolution is None else min(resolution, search.eps / 4.0)
        cert = hausdorff_linf(work, sq, resolution=res)
        key = (cert.upper, r)
        if best is None or key < best[0]:
            best = (key, sq)
    (delta, _), sq = best
    global_lb = min(global_lb, delta)
    if swapped:
        sq = Square(sq.cy, sq.cx, sq.r)
    gap = max(0.0, delta - max(0.0, global_lb))
    return FitResult(square=sq, delta=delta, optimality_gap=gap, evaluations=search.count)


def _overlap_region(box, side: float):
    h = 0.5 * side
    x0, x1 = sorted((box.xmin + h, box.xmax - h))
    y0, y1 = sorted((box.ymin + h, box.ymax - h))
    return x0, y0, x1, y1


def fit_square_overlap(a: Polygon, tol: float = 1e-5) -> OverlapFit:
    """Equal-area square with the largest overlap; ``mu`` is within ``tol`` of the optimum.

    Centres outside the returned search box can always be slid inwards without
    losing overlap, so the box is exhaustive.
    """
    _check_tol(tol)
    total = area(a)
    side = math.sqrt(total)
    box = bounding_rect(a)
    x0, y0, x1, y1 = _overlap_region(box, side)
    c = box.center
    h = 0.5 * side
    start = kernels.clip_rect_area(a.xs, a.ys, c.x - h, c.y - h, c.x + h, c.y + h)
    best, bx, by, upper, cells = kernels.overlap_bnb(
        a.xs, a.ys, side, x0, y0, x1, y1, start, c.x, c.y, 0.125 * tol * total, eval_budget()
    )
    if (upper - best) / total > tol:
        raise EvaluationBudgetExceeded(f"overlap fit used {cells} cells without certifying")
    mu = min(1.0, best / total)
    return OverlapFit(
        square=Square(bx, by, h),
        mu=mu,
        optimality_gap=max(0.0, upper - best) / total,
        evaluations=cells + 1,
    )


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    return np.arange(math.floor(lo / step), math.ceil(hi / step) + 1) * step


def brute_force_fit_oracle(a: Polygon, grid_step: float, mode: str = "hausdorff"):
    """Lattice search independent of the optimised path.

    Hausdorff mode scans the lattice ``h * Z^3`` over ``(cx, cy, r)``
    restricted to squares that could beat a seed square; the objective is
    1-Lipschitz, so the true minimum is at least the best lattice value minus
    ``h``.  Overlap mode scans centres on ``h * Z^2`` with side ``sqrt(area)``;
    the overlap moves by at most ``side * h`` between neighbours.
    """
    if not grid_step > 0.0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    if mode == "hausdorff":
        return _oracle_hausdorff(a, grid_step, eval_budget())
    if mode == "overlap":
        return _oracle_overlap(a, grid_step, eval_budget())
    raise ValueError(f"unknown oracle mode {mode!r}")


def _oracle_overlap(a: Polygon, h: float, cap: int) -> OverlapFit:
    total = area(a)
    side = math.sqrt(total)
    x0, y0, x1, y1 = _overlap_region(bounding_rect(a), side)
    gx = _axis(x0, x1, h)
    gy = _axis(y0, y1, h)
    if gx.size * gy.size > cap:
        raise GridTooFine(f"{gx.size * gy.size} grid points exceed the cap {cap}")
    cx, cy = np.meshgrid(gx, gy, indexing="ij")
    cx, cy = cx.ravel(), cy.ravel()
    half = 0.5 * side
    vals = kernels.clip_rect_areas(a.xs, a.ys, cx - half, cy - half, cx + half, cy + half)
    top = vals.max()
    # lexicographic tie-break among the best lattice points
    idx = int(np.flatnonzero(vals >= top)[0])
    return OverlapFit(
        square=Square(float(cx[idx]), float(cy[idx]), half),
        mu=min(1.0, float(top) / total),
        optimality_gap=side * h / total,
        evaluations=int(vals.size),
    )


def _oracle_hausdorff(a: Polygon, h: float, cap: int) -> FitResult:
    box = bounding_rect(a)
    params = rect_params(box)
    c = box.center
    seed_sq = Square(c.x, c.y, 0.5 * params.ell)
    d_seed = hausdorff_linf(a, seed_sq, resolution=1e-3 * h).upper
    w_small, h_big = params.width, params.height
    r_lo = max(h, 0.5 * h_big - d_seed)
    r_hi = 0.5 * w_small + d_seed
    ks = _axis(r_lo, r_hi, h)
    ks = ks[ks > 0.0]

    # dist(., A) on the whole lattice that any candidate square can touch
    gx = _axis(box.xmin - d_seed - h, box.xmax + d_seed + h, h)
    gy = _axis(box.ymin - d_seed - h, box.ymax + d_seed + h, h)
    ix0 = int(round(gx[0] / h))
    iy0 = int(round(gy[0] / h))
    n_total = 0
    for r in ks:
        nx = _axis(box.xmin - d_seed + r - h, box.xmax + d_seed - r + h, h).size
        ny = _axis(box.ymin - d_seed + r - h, box.ymax + d_seed - r + h, h).size
        n_total += nx * ny
    if n_total + gx.size * gy.size > cap:
        raise GridTooFine(f"{n_total} lattice squares exceed the cap {cap}")
    px, py = np.meshgrid(gx, gy, indexing="ij")
    field = kernels.dist_points_polygon(a.xs, a.ys, px.ravel(), py.ravel()).reshape(px.shape)

    cand = []
    for r in ks:
        kr = int(round(r / h))
        cxs = _axis(box.xmin - d_seed + r - h, box.xmax + d_seed - r + h, h)
        cys = _axis(box.ymin - d_seed + r - h, box.ymax + d_seed - r + h, h)
        if cxs.size == 0 or cys.size == 0:
            continue
        CX, CY = np.meshgrid(cxs, cys, indexing="ij")
        ix = np.rint(CX / h).astype(np.int64) - ix0
        iy = np.rint(CY / h).astype(np.int64) - iy0
        h1 = np.maximum(
            np.maximum(np.abs(a.xs.max() - CX), np.abs(CX - a.xs.min())),
            np.maximum(np.abs(a.ys.max() - CY), np.abs(CY - a.ys.min())),
        ) - r
        lb = np.maximum(h1, 0.0)
        for dx in (-kr, 0, kr):
            for dy in (-kr, 0, kr):
                jx = np.clip(ix + dx, 0, field.shape[0] - 1)
                jy = np.clip(iy + dy, 0, field.shape[1] - 1)
                lb = np.maximum(lb, field[jx, jy])
        cand.append(np.stack([lb.ravel(), CX.ravel(), CY.ravel(), np.full(lb.size, r)], axis=1))
    allc = np.concatenate(cand)
    order = np.lexsort((allc[:, 3], allc[:, 2], allc[:, 1], allc[:, 0]))
    best_key = None
    best_sq = None
    lattice_lo = math.inf
    exact = 0
    for idx in order:
        lb, cx, cy, r = allc[idx]
        if best_key is not None and lb >= best_key[0]:
            lattice_lo = min(lattice_lo, lb)
            break
        sq = Square(float(cx), float(cy), float(r))
        cert = hausdorff_linf(a, sq, resolution=1e-3 * h)
        exact += 1
        lattice_lo = min(lattice_lo, cert.value)
        key = (cert.upper, float(cx), float(cy), float(r))
        if best_key is None or key < best_key:
            best_key, best_sq = key, sq
    delta = best_key[0]
    lower = max(0.0, lattice_lo - h)
    return FitResult(
        square=best_sq,
        delta=delta,
        optimality_gap=delta - min(lower, delta),
        evaluations=int(allc.shape[0]) + exact,
    )


__all__ = [
    "FitResult",
    "OverlapFit",
    "brute_force_fit_oracle",
    "compass_search",
    "eval_budget",
    "fit_square_hausdorff",
    "fit_square_overlap",
]
