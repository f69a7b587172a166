"""Pure-Python reference kernels.

Same functions and semantics as the compiled ``_ckernels`` module; this one
is used when the extension is unavailable and as the parity reference in
the test suite.  Polygon arguments are sequences of vertex coordinates
(``xs``, ``ys``) describing a closed simple polygon in counterclockwise order.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

_INF = math.inf
# cells thinner than this get split along their long side regardless
_ASPECT = 1e6


def seg_dist_linf(px, py, ax, ay, bx, by):
    """L-infinity distance from (px, py) to the segment [a, b]."""
    u = px - ax
    v = py - ay
    dx = bx - ax
    dy = by - ay
    best = max(abs(u), abs(v))
    t = max(abs(u - dx), abs(v - dy))
    if t < best:
        best = t
    # The objective max(|u - s dx|, |v - s dy|) is convex piecewise linear in s;
    # its minimum sits at a breakpoint of one term or where the two terms cross.
    for num, den in ((u - v, dx - dy), (u + v, dx + dy), (u, dx), (v, dy)):
        if den != 0.0:
            s = num / den
            if 0.0 < s < 1.0:
                t = max(abs(u - s * dx), abs(v - s * dy))
                if t < best:
                    best = t
    return best


def point_in_polygon(xs, ys, px, py):
    """Crossing-number test. Points on the boundary may go either way."""
    n = len(xs)
    inside = False
    x0 = xs[n - 1]
    y0 = ys[n - 1]
    for i in range(n):
        x1 = xs[i]
        y1 = ys[i]
        if (y1 > py) != (y0 > py):
            xc = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
            if px < xc:
                inside = not inside
        x0 = x1
        y0 = y1
    return inside


def boundary_dist(xs, ys, px, py):
    n = len(xs)
    best = _INF
    x0 = xs[n - 1]
    y0 = ys[n - 1]
    for i in range(n):
        x1 = xs[i]
        y1 = ys[i]
        d = seg_dist_linf(px, py, x0, y0, x1, y1)
        if d < best:
            best = d
        x0 = x1
        y0 = y1
    return best


def dist_point_polygon(xs, ys, px, py):
    """L-infinity distance from a point to the filled polygon (0 inside)."""
    if point_in_polygon(xs, ys, px, py):
        return 0.0
    return boundary_dist(xs, ys, px, py)


def signed_dist(xs, ys, px, py):
    """Distance to the boundary, negated for interior points."""
    d = boundary_dist(xs, ys, px, py)
    return -d if point_in_polygon(xs, ys, px, py) else d


def dist_points_polygon(xs, ys, pxs, pys):
    """Vectorised ``dist_point_polygon`` over arrays of query points."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    px = np.asarray(pxs, dtype=float)
    py = np.asarray(pys, dtype=float)
    shape = px.shape
    px = px.ravel()
    py = py.ravel()
    best = np.full(px.shape, np.inf)
    inside = np.zeros(px.shape, dtype=bool)
    n = len(xs)
    for i in range(n):
        ax, ay = xs[i - 1], ys[i - 1]
        bx, by = xs[i], ys[i]
        u = px - ax
        v = py - ay
        dx = bx - ax
        dy = by - ay
        d = np.maximum(np.abs(u), np.abs(v))
        d = np.minimum(d, np.maximum(np.abs(u - dx), np.abs(v - dy)))
        for num, den in ((u - v, dx - dy), (u + v, dx + dy), (u, dx), (v, dy)):
            if den != 0.0:
                s = num / den
                ok = (s > 0.0) & (s < 1.0)
                cand = np.maximum(np.abs(u - s * dx), np.abs(v - s * dy))
                d = np.where(ok, np.minimum(d, cand), d)
        best = np.minimum(best, d)
        if ay != by:
            crosses = (by > py) != (ay > py)
            xc = ax + (py - ay) * (bx - ax) / (by - ay)
            inside ^= crosses & (px < xc)
    best[inside] = 0.0
    return best.reshape(shape)


def clip_rect_area(xs, ys, x0, y0, x1, y1):
    """Area of the polygon intersected with the box [x0, x1] x [y0, y1]."""
    if x1 <= x0 or y1 <= y0:
        return 0.0
    pts = list(zip(xs, ys))
    # (axis, bound, keep_greater)
    for axis, bound, keep_ge in ((0, x0, True), (0, x1, False), (1, y0, True), (1, y1, False)):
        if not pts:
            return 0.0
        out = []
        s = pts[-1]
        s_in = (s[axis] >= bound) if keep_ge else (s[axis] <= bound)
        for e in pts:
            e_in = (e[axis] >= bound) if keep_ge else (e[axis] <= bound)
            if e_in != s_in:
                t = (bound - s[axis]) / (e[axis] - s[axis])
                if axis == 0:
                    out.append((bound, s[1] + t * (e[1] - s[1])))
                else:
                    out.append((s[0] + t * (e[0] - s[0]), bound))
            if e_in:
                out.append(e)
            s = e
            s_in = e_in
        pts = out
    if len(pts) < 3:
        return 0.0
    acc = 0.0
    px, py = pts[-1]
    for qx, qy in pts:
        acc += px * qy - qx * py
        px, py = qx, qy
    return max(0.0, 0.5 * acc)


def clip_rect_areas(xs, ys, x0s, y0s, x1s, y1s):
    """``clip_rect_area`` over arrays of boxes."""
    x0s = np.asarray(x0s, dtype=float).ravel()
    y0s = np.asarray(y0s, dtype=float).ravel()
    x1s = np.asarray(x1s, dtype=float).ravel()
    y1s = np.asarray(y1s, dtype=float).ravel()
    xs = list(map(float, xs))
    ys = list(map(float, ys))
    out = np.empty(len(x0s))
    for i in range(len(x0s)):
        out[i] = clip_rect_area(xs, ys, x0s[i], y0s[i], x1s[i], y1s[i])
    return out


def _cell_bounds(xs, ys, x0, y0, x1, y1):
    """(upper bound, best sampled value) of dist(., A) over one box."""
    n = len(xs)
    worst = [0.0] * n
    lo = 0.0
    for px, py in ((x0, y0), (x1, y0), (x1, y1), (x0, y1)):
        dmin = _INF
        ex, ey = xs[n - 1], ys[n - 1]
        for i in range(n):
            fx, fy = xs[i], ys[i]
            d = seg_dist_linf(px, py, ex, ey, fx, fy)
            if d > worst[i]:
                worst[i] = d
            if d < dmin:
                dmin = d
            ex, ey = fx, fy
        if dmin > lo and not point_in_polygon(xs, ys, px, py):
            lo = dmin
    # dist(., A) <= dist(., edge) and the latter is convex: its max over the
    # box is at a corner.
    ub = min(worst)
    cx = 0.5 * (x0 + x1)
    cy = 0.5 * (y0 + y1)
    sd = signed_dist(xs, ys, cx, cy)
    if sd > lo:
        lo = sd
    # 1-Lipschitz bound from the centre.
    lip = sd + 0.5 * max(x1 - x0, y1 - y0)
    if lip < ub:
        ub = lip
    if ub < 0.0:
        ub = 0.0
    return ub, lo


def _split_x(wx, wy, ux, uy, vx, vy, key):
    """Pick the split axis from the children's bounds (``u`` max, ``v`` min).

    A lower max wins.  On a tie the split that tightens either child wins,
    since on a flat ridge only the cross-ridge split ever helps.  Extreme
    slivers and exact ties go by shape.
    """
    t = 1e-12 * (1.0 + abs(key))
    if wx > _ASPECT * wy:
        return True
    if wy > _ASPECT * wx:
        return False
    if ux < uy - t:
        return True
    if uy < ux - t:
        return False
    if vx < vy - t:
        return True
    if vy < vx - t:
        return False
    return wx >= wy


def box_sup_dist(xs, ys, x0, y0, x1, y1, floor, threshold, eps, max_cells):
    """Certified bounds on the supremum of dist(., A) over a box.

    Best-first branch and bound.  Returns ``(lo, hi, cells)`` with
    ``lo <= sup <= hi``.  Cells whose upper bound is at most
    ``max(lo, floor) + eps`` are discarded, so on normal termination
    ``hi <= max(lo, floor) + eps``.  The search stops early as soon as
    ``lo >= threshold``; ``hi`` remains a valid upper bound in that case and
    when ``max_cells`` is exhausted.
    """
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    ub, lo = _cell_bounds(xs, ys, x0, y0, x1, y1)
    cells = 1
    if lo >= threshold:
        return lo, max(ub, lo), cells
    tiny = 1e-15 * (1.0 + abs(x0) + abs(x1) + abs(y0) + abs(y1))
    pruned = lo
    heap = [(-ub, x0, y0, x1, y1)]
    while heap:
        neg, bx0, by0, bx1, by1 = heapq.heappop(heap)
        cub = -neg
        cut = max(lo, floor) + eps
        if cub <= cut:
            pruned = max(pruned, cub)
            break
        if cells >= max_cells or max(bx1 - bx0, by1 - by0) <= tiny:
            if cells >= max_cells:
                return lo, max(lo, pruned, cub), cells
            pruned = max(pruned, cub)
            continue
        mx = 0.5 * (bx0 + bx1)
        my = 0.5 * (by0 + by1)
        kids_x = ((bx0, by0, mx, by1), (mx, by0, bx1, by1))
        kids_y = ((bx0, by0, bx1, my), (bx0, my, bx1, by1))
        bx_ = [_cell_bounds(xs, ys, *k) for k in kids_x]
        by_ = [_cell_bounds(xs, ys, *k) for k in kids_y]
        cells += 4
        for b in bx_ + by_:
            if b[1] > lo:
                lo = b[1]
        if lo >= threshold:
            return lo, max(lo, pruned, cub), cells
        # Splitting along the axis that tightens the bound most keeps cells
        # long along flat ridges of the field.
        ux = max(bx_[0][0], bx_[1][0])
        uy = max(by_[0][0], by_[1][0])
        vx = min(bx_[0][0], bx_[1][0])
        vy = min(by_[0][0], by_[1][0])
        if _split_x(bx1 - bx0, by1 - by0, ux, uy, vx, vy, cub):
            chosen = zip(kids_x, bx_)
        else:
            chosen = zip(kids_y, by_)
        for box, (kub, _) in chosen:
            kub = min(kub, cub)
            if kub <= max(lo, floor) + eps:
                pruned = max(pruned, kub)
            else:
                heapq.heappush(heap, (-kub,) + box)
    return lo, max(lo, pruned), cells


def _cross_at(us, vs, t, side, w_lo, w_hi):
    """Length of A on the line u = t, restricted to v in [w_lo, w_hi].

    ``side`` picks the one-sided limit (+1 from above, -1 from below), which
    is what matters when the line runs along an edge of A.
    """
    hits = []
    n = len(us)
    ui, vi = us[n - 1], vs[n - 1]
    for k in range(n):
        uj, vj = us[k], vs[k]
        if ui < uj:
            lo, hi = ui, uj
        else:
            lo, hi = uj, ui
        if (lo <= t < hi) if side > 0 else (lo < t <= hi):
            hits.append(vi + (t - ui) * (vj - vi) / (uj - ui))
        ui, vi = uj, vj
    hits.sort()
    total = 0.0
    for k in range(0, len(hits) - 1, 2):
        a = max(hits[k], w_lo)
        b = min(hits[k + 1], w_hi)
        if b > a:
            total += b - a
    return total


def cross_len_extremes(us, vs, t_lo, t_hi, w_lo, w_hi):
    """(min, max) over t in [t_lo, t_hi] of the cross-section length.

    The length is piecewise linear in t between vertex coordinates and the
    points where edges cross the window bounds, so those candidates suffice.
    """
    if w_hi <= w_lo:
        return 0.0, 0.0
    cands = [(t_lo, 1), (t_hi, -1)]
    if t_lo == t_hi:
        cands = [(t_lo, 1), (t_lo, -1)]
    n = len(us)
    ui, vi = us[n - 1], vs[n - 1]
    for k in range(n):
        uj, vj = us[k], vs[k]
        if t_lo < uj < t_hi:
            cands.append((uj, 1))
            cands.append((uj, -1))
        if vi != vj:
            for w in (w_lo, w_hi):
                if min(vi, vj) < w < max(vi, vj):
                    t = ui + (w - vi) * (uj - ui) / (vj - vi)
                    if t_lo < t < t_hi:
                        cands.append((t, 1))
                        cands.append((t, -1))
        ui, vi = uj, vj
    vals = [_cross_at(us, vs, t, side, w_lo, w_hi) for t, side in cands]
    return min(vals), max(vals)


def _slope_bound(xs, ys, h, x0, y0, x1, y1):
    """Bounds on how much the clipped area can rise along each axis.

    Returns ``(gx, gy)``: moving the centre from the cell midpoint first along
    x then along y gains at most ``gx * (x1 - x0) / 2 + gy * (y1 - y0) / 2``.
    The partial derivative along x is the length of A on the square's right
    edge minus that on its left edge; similarly along y.
    """
    my = 0.5 * (y0 + y1)
    r_lo, r_hi = cross_len_extremes(xs, ys, x0 + h, x1 + h, my - h, my + h)
    l_lo, l_hi = cross_len_extremes(xs, ys, x0 - h, x1 - h, my - h, my + h)
    gx = max(r_hi - l_lo, l_hi - r_lo, 0.0)
    # the y-leg runs at an unknown x in [x0, x1]: widen for sup, shrink for inf
    _, t_hi = cross_len_extremes(ys, xs, y0 + h, y1 + h, x0 - h, x1 + h)
    _, b_hi = cross_len_extremes(ys, xs, y0 - h, y1 - h, x0 - h, x1 + h)
    t_lo, _ = cross_len_extremes(ys, xs, y0 + h, y1 + h, x1 - h, x0 + h)
    b_lo, _ = cross_len_extremes(ys, xs, y0 - h, y1 - h, x1 - h, x0 + h)
    gy = max(t_hi - b_lo, b_hi - t_lo, 0.0)
    return gx, gy


def overlap_bnb(xs, ys, side, cx0, cy0, cx1, cy1, best, best_cx, best_cy, margin, max_cells):
    """Maximise area(A n square(c, side)) over centres c in a box.

    ``best`` is the incumbent value at (best_cx, best_cy).  Returns
    ``(best, best_cx, best_cy, upper, cells)`` where ``upper`` bounds the true
    maximum; cells are discarded once their bound is within ``margin`` of the
    incumbent.  Ties keep the lexicographically smaller centre.
    """
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    h = 0.5 * side
    full = side * side
    tie = 1e-14 * full

    def value(cx, cy):
        return clip_rect_area(xs, ys, cx - h, cy - h, cx + h, cy + h)

    def bound(x0, y0, x1, y1, f_mid, cap):
        """(upper bound, split-along-x?) for one cell."""
        wx, wy = x1 - x0, y1 - y0
        u = min(
            clip_rect_area(xs, ys, x0 - h, y0 - h, x1 + h, y1 + h),
            f_mid + side * 0.5 * (wx + wy),
            full,
            cap,
        )
        if u <= best + margin:
            return u, wx >= wy
        gx, gy = _slope_bound(xs, ys, h, x0, y0, x1, y1)
        u = min(u, f_mid + 0.5 * (gx * wx + gy * wy))
        return u, gx * wx >= gy * wy

    def offer(v, cx, cy):
        nonlocal best, best_cx, best_cy
        if v > best + tie or (v >= best - tie and (cx, cy) < (best_cx, best_cy)):
            best, best_cx, best_cy = v, cx, cy

    mx, my = 0.5 * (cx0 + cx1), 0.5 * (cy0 + cy1)
    fm = value(mx, my)
    offer(fm, mx, my)
    cells = 1
    ub, along_x = bound(cx0, cy0, cx1, cy1, fm, full)
    heap = [(-ub, along_x, cx0, cy0, cx1, cy1)]
    upper = best
    tiny = 1e-15 * (1.0 + abs(cx0) + abs(cx1) + abs(cy0) + abs(cy1))
    while heap:
        neg, along_x, x0, y0, x1, y1 = heapq.heappop(heap)
        ub = -neg
        if ub <= best + margin:
            upper = max(upper, ub)
            break
        if cells >= max_cells:
            return best, best_cx, best_cy, max(upper, ub), cells
        if max(x1 - x0, y1 - y0) <= tiny:
            upper = max(upper, ub)
            continue
        if along_x:
            xm = 0.5 * (x0 + x1)
            kids = ((x0, y0, xm, y1), (xm, y0, x1, y1))
        else:
            ym = 0.5 * (y0 + y1)
            kids = ((x0, y0, x1, ym), (x0, ym, x1, y1))
        for k in kids:
            kx, ky = 0.5 * (k[0] + k[2]), 0.5 * (k[1] + k[3])
            fk = value(kx, ky)
            cells += 1
            offer(fk, kx, ky)
            kb, kx_split = bound(*k, fk, ub)
            if kb <= best + margin:
                upper = max(upper, kb)
            else:
                heapq.heappush(heap, (-kb, kx_split) + k)
    return best, best_cx, best_cy, max(upper, best), cells
