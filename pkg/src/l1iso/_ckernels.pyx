# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np

from libc.math cimport fabs, INFINITY
from libc.stdlib cimport free, malloc, realloc


cdef struct Cell:
    double key
    double x0
    double y0
    double x1
    double y1
    int flag


cdef struct Heap:
    Cell* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int heap_init(Heap* h) noexcept nogil:
    h.cap = 256
    h.size = 0
    h.data = <Cell*> malloc(h.cap * sizeof(Cell))
    return 0 if h.data != NULL else -1


cdef int heap_push(Heap* h, Cell c) noexcept nogil:
    cdef Py_ssize_t i, p
    cdef Cell* grown
    if h.size == h.cap:
        grown = <Cell*> realloc(h.data, 2 * h.cap * sizeof(Cell))
        if grown == NULL:
            return -1
        h.data = grown
        h.cap *= 2
    i = h.size
    h.size += 1
    while i > 0:
        p = (i - 1) >> 1
        if h.data[p].key >= c.key:
            break
        h.data[i] = h.data[p]
        i = p
    h.data[i] = c
    return 0


cdef Cell heap_pop(Heap* h) noexcept nogil:
    cdef Cell top = h.data[0]
    cdef Cell last
    cdef Py_ssize_t i = 0, child
    h.size -= 1
    if h.size > 0:
        last = h.data[h.size]
        while True:
            child = 2 * i + 1
            if child >= h.size:
                break
            if child + 1 < h.size and h.data[child + 1].key > h.data[child].key:
                child += 1
            if h.data[child].key <= last.key:
                break
            h.data[i] = h.data[child]
            i = child
        h.data[i] = last
    return top


cdef inline double dmax(double a, double b) noexcept nogil:
    return a if a > b else b


cdef inline double dmin(double a, double b) noexcept nogil:
    return a if a < b else b


cdef inline double _seg(double px, double py, double ax, double ay,
                        double bx, double by) noexcept nogil:
    cdef double u = px - ax, v = py - ay, dx = bx - ax, dy = by - ay
    cdef double best = dmax(fabs(u), fabs(v))
    cdef double t = dmax(fabs(u - dx), fabs(v - dy))
    cdef double s, den
    if t < best:
        best = t
    den = dx - dy
    if den != 0.0:
        s = (u - v) / den
        if 0.0 < s < 1.0:
            best = dmin(best, dmax(fabs(u - s * dx), fabs(v - s * dy)))
    den = dx + dy
    if den != 0.0:
        s = (u + v) / den
        if 0.0 < s < 1.0:
            best = dmin(best, dmax(fabs(u - s * dx), fabs(v - s * dy)))
    if dx != 0.0:
        s = u / dx
        if 0.0 < s < 1.0:
            best = dmin(best, fabs(v - s * dy))
    if dy != 0.0:
        s = v / dy
        if 0.0 < s < 1.0:
            best = dmin(best, fabs(u - s * dx))
    return best


cdef bint _pip(const double* xs, const double* ys, Py_ssize_t n,
               double px, double py) noexcept nogil:
    cdef bint inside = False
    cdef Py_ssize_t i
    cdef double x0 = xs[n - 1], y0 = ys[n - 1], x1, y1
    for i in range(n):
        x1 = xs[i]
        y1 = ys[i]
        if (y1 > py) != (y0 > py):
            if px < x0 + (py - y0) * (x1 - x0) / (y1 - y0):
                inside = not inside
        x0 = x1
        y0 = y1
    return inside


cdef double _bdist(const double* xs, const double* ys, Py_ssize_t n,
                   double px, double py) noexcept nogil:
    cdef double best = INFINITY, d
    cdef Py_ssize_t i
    cdef double x0 = xs[n - 1], y0 = ys[n - 1]
    for i in range(n):
        d = _seg(px, py, x0, y0, xs[i], ys[i])
        if d < best:
            best = d
        x0 = xs[i]
        y0 = ys[i]
    return best


cdef double _signed(const double* xs, const double* ys, Py_ssize_t n,
                    double px, double py) noexcept nogil:
    cdef double d = _bdist(xs, ys, n, px, py)
    return -d if _pip(xs, ys, n, px, py) else d


cdef Py_ssize_t _clip_pass(const double* ix, const double* iy, Py_ssize_t m,
                           double* ox, double* oy, int axis, double bound,
                           bint keep_ge) noexcept nogil:
    cdef Py_ssize_t i, k = 0
    cdef double sx, sy, ex, ey, sv, ev, t
    cdef bint s_in, e_in
    if m == 0:
        return 0
    sx = ix[m - 1]
    sy = iy[m - 1]
    sv = sx if axis == 0 else sy
    s_in = (sv >= bound) if keep_ge else (sv <= bound)
    for i in range(m):
        ex = ix[i]
        ey = iy[i]
        ev = ex if axis == 0 else ey
        e_in = (ev >= bound) if keep_ge else (ev <= bound)
        if e_in != s_in:
            t = (bound - sv) / (ev - sv)
            if axis == 0:
                ox[k] = bound
                oy[k] = sy + t * (ey - sy)
            else:
                ox[k] = sx + t * (ex - sx)
                oy[k] = bound
            k += 1
        if e_in:
            ox[k] = ex
            oy[k] = ey
            k += 1
        sx = ex
        sy = ey
        sv = ev
        s_in = e_in
    return k


cdef double _clip(const double* xs, const double* ys, Py_ssize_t n,
                  double x0, double y0, double x1, double y1,
                  double* ax, double* ay, double* bx, double* by) noexcept nogil:
    # each pass can grow the vertex count by 1.5x; buffers hold >= 6 * n + 16
    cdef Py_ssize_t m, i
    cdef double acc, px, py
    if x1 <= x0 or y1 <= y0:
        return 0.0
    m = _clip_pass(xs, ys, n, ax, ay, 0, x0, True)
    m = _clip_pass(ax, ay, m, bx, by, 0, x1, False)
    m = _clip_pass(bx, by, m, ax, ay, 1, y0, True)
    m = _clip_pass(ax, ay, m, bx, by, 1, y1, False)
    if m < 3:
        return 0.0
    acc = 0.0
    px = bx[m - 1]
    py = by[m - 1]
    for i in range(m):
        acc += px * by[i] - bx[i] * py
        px = bx[i]
        py = by[i]
    return dmax(0.0, 0.5 * acc)


cdef class _Poly:
    """Contiguous vertex buffers plus clip scratch space."""
    cdef double* xs
    cdef double* ys
    cdef double* scratch
    cdef double* worst
    cdef double* hits
    cdef Py_ssize_t n
    cdef object _keep

    def __cinit__(self, xs, ys):
        cdef const double[::1] mx = np.ascontiguousarray(xs, dtype=np.float64)
        cdef const double[::1] my = np.ascontiguousarray(ys, dtype=np.float64)
        self.n = mx.shape[0]
        if self.n < 3 or my.shape[0] != self.n:
            raise ValueError("polygon needs >= 3 vertices with matching coordinates")
        self._keep = (mx, my)
        self.xs = <double*> &mx[0]
        self.ys = <double*> &my[0]
        self.scratch = <double*> malloc(4 * (6 * self.n + 16) * sizeof(double))
        self.worst = <double*> malloc(self.n * sizeof(double))
        self.hits = <double*> malloc(self.n * sizeof(double))
        if self.scratch == NULL or self.worst == NULL or self.hits == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.scratch)
        free(self.worst)
        free(self.hits)

    cdef double clip(self, double x0, double y0, double x1, double y1) noexcept nogil:
        cdef Py_ssize_t w = 6 * self.n + 16
        return _clip(self.xs, self.ys, self.n, x0, y0, x1, y1,
                     self.scratch, self.scratch + w,
                     self.scratch + 2 * w, self.scratch + 3 * w)


cdef void _cell_bounds(_Poly p, double x0, double y0, double x1, double y1,
                       double* ub_out, double* lo_out) noexcept:
    cdef Py_ssize_t n = p.n, i, k
    cdef double* worst = p.worst
    cdef double px, py, d, dm, lo = 0.0, ub, sd, lip
    cdef double ex, ey
    for i in range(n):
        worst[i] = 0.0
    for k in range(4):
        px = x0 if (k == 0 or k == 3) else x1
        py = y0 if k < 2 else y1
        dm = INFINITY
        ex = p.xs[n - 1]
        ey = p.ys[n - 1]
        for i in range(n):
            d = _seg(px, py, ex, ey, p.xs[i], p.ys[i])
            if d > worst[i]:
                worst[i] = d
            if d < dm:
                dm = d
            ex = p.xs[i]
            ey = p.ys[i]
        if dm > lo and not _pip(p.xs, p.ys, n, px, py):
            lo = dm
    ub = worst[0]
    for i in range(1, n):
        if worst[i] < ub:
            ub = worst[i]
    sd = _signed(p.xs, p.ys, n, 0.5 * (x0 + x1), 0.5 * (y0 + y1))
    if sd > lo:
        lo = sd
    lip = sd + 0.5 * dmax(x1 - x0, y1 - y0)
    if lip < ub:
        ub = lip
    if ub < 0.0:
        ub = 0.0
    ub_out[0] = ub
    lo_out[0] = lo


cdef double _cross_at(const double* us, const double* vs, Py_ssize_t n, double* hits,
                      double t, int side, double w_lo, double w_hi) noexcept nogil:
    cdef Py_ssize_t k, m = 0, j
    cdef double ui = us[n - 1], vi = vs[n - 1], uj, vj, lo, hi, x, a, b, total = 0.0
    cdef bint hit
    for k in range(n):
        uj = us[k]
        vj = vs[k]
        if ui < uj:
            lo = ui
            hi = uj
        else:
            lo = uj
            hi = ui
        if side > 0:
            hit = lo <= t < hi
        else:
            hit = lo < t <= hi
        if hit:
            x = vi + (t - ui) * (vj - vi) / (uj - ui)
            j = m
            while j > 0 and hits[j - 1] > x:
                hits[j] = hits[j - 1]
                j -= 1
            hits[j] = x
            m += 1
        ui = uj
        vi = vj
    k = 0
    while k + 1 < m:
        a = dmax(hits[k], w_lo)
        b = dmin(hits[k + 1], w_hi)
        if b > a:
            total += b - a
        k += 2
    return total


cdef void _cross_ext(const double* us, const double* vs, Py_ssize_t n, double* hits,
                     double t_lo, double t_hi, double w_lo, double w_hi,
                     double* out_min, double* out_max) noexcept nogil:
    cdef Py_ssize_t k
    cdef double ui, vi, uj, vj, t, w, v, mn, mx
    cdef int q
    if w_hi <= w_lo:
        out_min[0] = 0.0
        out_max[0] = 0.0
        return
    mn = _cross_at(us, vs, n, hits, t_lo, 1, w_lo, w_hi)
    mx = mn
    v = _cross_at(us, vs, n, hits, t_hi, -1, w_lo, w_hi)
    mn = dmin(mn, v)
    mx = dmax(mx, v)
    if t_lo == t_hi:
        v = _cross_at(us, vs, n, hits, t_lo, -1, w_lo, w_hi)
        mn = dmin(mn, v)
        mx = dmax(mx, v)
    ui = us[n - 1]
    vi = vs[n - 1]
    for k in range(n):
        uj = us[k]
        vj = vs[k]
        if t_lo < uj < t_hi:
            v = _cross_at(us, vs, n, hits, uj, 1, w_lo, w_hi)
            mn = dmin(mn, v)
            mx = dmax(mx, v)
            v = _cross_at(us, vs, n, hits, uj, -1, w_lo, w_hi)
            mn = dmin(mn, v)
            mx = dmax(mx, v)
        if vi != vj:
            for q in range(2):
                w = w_lo if q == 0 else w_hi
                if dmin(vi, vj) < w < dmax(vi, vj):
                    t = ui + (w - vi) * (uj - ui) / (vj - vi)
                    if t_lo < t < t_hi:
                        v = _cross_at(us, vs, n, hits, t, 1, w_lo, w_hi)
                        mn = dmin(mn, v)
                        mx = dmax(mx, v)
                        v = _cross_at(us, vs, n, hits, t, -1, w_lo, w_hi)
                        mn = dmin(mn, v)
                        mx = dmax(mx, v)
        ui = uj
        vi = vj
    out_min[0] = mn
    out_max[0] = mx


cdef void _slope_bound(_Poly p, double h, double x0, double y0, double x1, double y1,
                       double* gx, double* gy) noexcept nogil:
    cdef double my = 0.5 * (y0 + y1)
    cdef double r_lo, r_hi, l_lo, l_hi, t_lo, t_hi, b_lo, b_hi, dummy
    _cross_ext(p.xs, p.ys, p.n, p.hits, x0 + h, x1 + h, my - h, my + h, &r_lo, &r_hi)
    _cross_ext(p.xs, p.ys, p.n, p.hits, x0 - h, x1 - h, my - h, my + h, &l_lo, &l_hi)
    gx[0] = dmax(dmax(r_hi - l_lo, l_hi - r_lo), 0.0)
    _cross_ext(p.ys, p.xs, p.n, p.hits, y0 + h, y1 + h, x0 - h, x1 + h, &dummy, &t_hi)
    _cross_ext(p.ys, p.xs, p.n, p.hits, y0 - h, y1 - h, x0 - h, x1 + h, &dummy, &b_hi)
    _cross_ext(p.ys, p.xs, p.n, p.hits, y0 + h, y1 + h, x1 - h, x0 + h, &t_lo, &dummy)
    _cross_ext(p.ys, p.xs, p.n, p.hits, y0 - h, y1 - h, x1 - h, x0 + h, &b_lo, &dummy)
    gy[0] = dmax(dmax(t_hi - b_lo, b_hi - t_lo), 0.0)


def cross_len_extremes(us, vs, double t_lo, double t_hi, double w_lo, double w_hi):
    """(min, max) over t in [t_lo, t_hi] of the cross-section length."""
    cdef _Poly p = _Poly(us, vs)
    cdef double mn, mx
    _cross_ext(p.xs, p.ys, p.n, p.hits, t_lo, t_hi, w_lo, w_hi, &mn, &mx)
    return mn, mx


def seg_dist_linf(double px, double py, double ax, double ay, double bx, double by):
    """L-infinity distance from (px, py) to the segment [a, b]."""
    return _seg(px, py, ax, ay, bx, by)


def point_in_polygon(xs, ys, double px, double py):
    cdef _Poly p = _Poly(xs, ys)
    return bool(_pip(p.xs, p.ys, p.n, px, py))


def boundary_dist(xs, ys, double px, double py):
    cdef _Poly p = _Poly(xs, ys)
    return _bdist(p.xs, p.ys, p.n, px, py)


def dist_point_polygon(xs, ys, double px, double py):
    cdef _Poly p = _Poly(xs, ys)
    if _pip(p.xs, p.ys, p.n, px, py):
        return 0.0
    return _bdist(p.xs, p.ys, p.n, px, py)


def signed_dist(xs, ys, double px, double py):
    cdef _Poly p = _Poly(xs, ys)
    return _signed(p.xs, p.ys, p.n, px, py)


def dist_points_polygon(xs, ys, pxs, pys):
    cdef _Poly p = _Poly(xs, ys)
    qx = np.asarray(pxs, dtype=np.float64)
    shape = qx.shape
    cdef const double[::1] mx = np.ascontiguousarray(qx.ravel())
    cdef const double[::1] my = np.ascontiguousarray(np.asarray(pys, dtype=np.float64).ravel())
    cdef Py_ssize_t m = mx.shape[0], j
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] mo = out
    for j in range(m):
        if _pip(p.xs, p.ys, p.n, mx[j], my[j]):
            mo[j] = 0.0
        else:
            mo[j] = _bdist(p.xs, p.ys, p.n, mx[j], my[j])
    return out.reshape(shape)


def clip_rect_area(xs, ys, double x0, double y0, double x1, double y1):
    """Area of the polygon intersected with the box [x0, x1] x [y0, y1]."""
    cdef _Poly p = _Poly(xs, ys)
    return p.clip(x0, y0, x1, y1)


def clip_rect_areas(xs, ys, x0s, y0s, x1s, y1s):
    cdef _Poly p = _Poly(xs, ys)
    cdef const double[::1] a = np.ascontiguousarray(np.asarray(x0s, dtype=np.float64).ravel())
    cdef const double[::1] b = np.ascontiguousarray(np.asarray(y0s, dtype=np.float64).ravel())
    cdef const double[::1] c = np.ascontiguousarray(np.asarray(x1s, dtype=np.float64).ravel())
    cdef const double[::1] d = np.ascontiguousarray(np.asarray(y1s, dtype=np.float64).ravel())
    cdef Py_ssize_t m = a.shape[0], j
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] mo = out
    for j in range(m):
        mo[j] = p.clip(a[j], b[j], c[j], d[j])
    return out


cdef inline bint _split_x(double wx, double wy, double ux, double uy,
                          double vx, double vy, double key) noexcept nogil:
    # Lower max bound wins; on a tie, the split that tightens either child.
    cdef double t = 1e-12 * (1.0 + fabs(key))
    if wx > 1e6 * wy:
        return True
    if wy > 1e6 * wx:
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


def box_sup_dist(xs, ys, double x0, double y0, double x1, double y1,
                 double floor, double threshold, double eps, long max_cells):
    """Certified bounds on sup of dist(., A) over a box; see ``_pykernels``."""
    cdef _Poly p = _Poly(xs, ys)
    cdef double ub, lo, pruned, cut, mx, my, ux, uy, kub
    cdef double u[4]
    cdef double l[4]
    cdef double kx0[4]
    cdef double ky0[4]
    cdef double kx1[4]
    cdef double ky1[4]
    cdef long cells = 1
    cdef int j, first
    cdef Cell c, kid
    cdef Heap h
    cdef double tiny = 1e-15 * (1.0 + fabs(x0) + fabs(x1) + fabs(y0) + fabs(y1))

    _cell_bounds(p, x0, y0, x1, y1, &ub, &lo)
    if lo >= threshold:
        return lo, dmax(ub, lo), cells
    if heap_init(&h) != 0:
        raise MemoryError()
    pruned = lo
    try:
        c.key = ub
        c.x0 = x0
        c.y0 = y0
        c.x1 = x1
        c.y1 = y1
        heap_push(&h, c)
        while h.size > 0:
            c = heap_pop(&h)
            cut = dmax(lo, floor) + eps
            if c.key <= cut:
                pruned = dmax(pruned, c.key)
                break
            if cells >= max_cells:
                return lo, dmax(dmax(lo, pruned), c.key), cells
            if dmax(c.x1 - c.x0, c.y1 - c.y0) <= tiny:
                pruned = dmax(pruned, c.key)
                continue
            mx = 0.5 * (c.x0 + c.x1)
            my = 0.5 * (c.y0 + c.y1)
            kx0[0] = c.x0; ky0[0] = c.y0; kx1[0] = mx; ky1[0] = c.y1
            kx0[1] = mx; ky0[1] = c.y0; kx1[1] = c.x1; ky1[1] = c.y1
            kx0[2] = c.x0; ky0[2] = c.y0; kx1[2] = c.x1; ky1[2] = my
            kx0[3] = c.x0; ky0[3] = my; kx1[3] = c.x1; ky1[3] = c.y1
            for j in range(4):
                _cell_bounds(p, kx0[j], ky0[j], kx1[j], ky1[j], &u[j], &l[j])
                if l[j] > lo:
                    lo = l[j]
            cells += 4
            if lo >= threshold:
                return lo, dmax(dmax(lo, pruned), c.key), cells
            ux = dmax(u[0], u[1])
            uy = dmax(u[2], u[3])
            first = 0 if _split_x(c.x1 - c.x0, c.y1 - c.y0, ux, uy,
                                  dmin(u[0], u[1]), dmin(u[2], u[3]), c.key) else 2
            for j in range(first, first + 2):
                kub = dmin(u[j], c.key)
                if kub <= dmax(lo, floor) + eps:
                    pruned = dmax(pruned, kub)
                else:
                    kid.key = kub
                    kid.x0 = kx0[j]
                    kid.y0 = ky0[j]
                    kid.x1 = kx1[j]
                    kid.y1 = ky1[j]
                    if heap_push(&h, kid) != 0:
                        raise MemoryError()
        return lo, dmax(lo, pruned), cells
    finally:
        free(h.data)


cdef double _overlap_bound(_Poly p, double side, double x0, double y0, double x1,
                          double y1, double f_mid, double cap, double target,
                          int* along_x) noexcept nogil:
    cdef double hs = 0.5 * side, wx = x1 - x0, wy = y1 - y0, u, gx, gy
    u = p.clip(x0 - hs, y0 - hs, x1 + hs, y1 + hs)
    u = dmin(u, f_mid + side * 0.5 * (wx + wy))
    u = dmin(dmin(u, side * side), cap)
    if u <= target:
        along_x[0] = 1 if wx >= wy else 0
        return u
    _slope_bound(p, hs, x0, y0, x1, y1, &gx, &gy)
    u = dmin(u, f_mid + 0.5 * (gx * wx + gy * wy))
    along_x[0] = 1 if gx * wx >= gy * wy else 0
    return u


def overlap_bnb(xs, ys, double side, double cx0, double cy0, double cx1, double cy1,
                double best, double best_cx, double best_cy, double margin, long max_cells):
    """Maximise the clipped square area over centres; see ``_pykernels``."""
    cdef _Poly p = _Poly(xs, ys)
    cdef double hs = 0.5 * side, full = side * side
    cdef double tie = 1e-14 * full
    cdef double upper, ub, fm, kb, kx, ky, xm, ym
    cdef double tiny = 1e-15 * (1.0 + fabs(cx0) + fabs(cx1) + fabs(cy0) + fabs(cy1))
    cdef double bx0[2]
    cdef double by0[2]
    cdef double bx1[2]
    cdef double by1[2]
    cdef long cells = 1
    cdef int j, along
    cdef Cell c, kid
    cdef Heap h

    kx = 0.5 * (cx0 + cx1)
    ky = 0.5 * (cy0 + cy1)
    fm = p.clip(kx - hs, ky - hs, kx + hs, ky + hs)
    if fm > best + tie or (fm >= best - tie and (kx < best_cx or (kx == best_cx and ky < best_cy))):
        best = fm
        best_cx = kx
        best_cy = ky
    ub = _overlap_bound(p, side, cx0, cy0, cx1, cy1, fm, full, best + margin, &along)
    upper = best
    if heap_init(&h) != 0:
        raise MemoryError()
    try:
        c.key = ub
        c.x0 = cx0
        c.y0 = cy0
        c.x1 = cx1
        c.y1 = cy1
        c.flag = along
        heap_push(&h, c)
        while h.size > 0:
            c = heap_pop(&h)
            if c.key <= best + margin:
                upper = dmax(upper, c.key)
                break
            if cells >= max_cells:
                return best, best_cx, best_cy, dmax(upper, c.key), cells
            if dmax(c.x1 - c.x0, c.y1 - c.y0) <= tiny:
                upper = dmax(upper, c.key)
                continue
            if c.flag:
                xm = 0.5 * (c.x0 + c.x1)
                bx0[0] = c.x0; by0[0] = c.y0; bx1[0] = xm; by1[0] = c.y1
                bx0[1] = xm; by0[1] = c.y0; bx1[1] = c.x1; by1[1] = c.y1
            else:
                ym = 0.5 * (c.y0 + c.y1)
                bx0[0] = c.x0; by0[0] = c.y0; bx1[0] = c.x1; by1[0] = ym
                bx0[1] = c.x0; by0[1] = ym; bx1[1] = c.x1; by1[1] = c.y1
            for j in range(2):
                kx = 0.5 * (bx0[j] + bx1[j])
                ky = 0.5 * (by0[j] + by1[j])
                fm = p.clip(kx - hs, ky - hs, kx + hs, ky + hs)
                cells += 1
                if fm > best + tie or (fm >= best - tie and (kx < best_cx or (kx == best_cx and ky < best_cy))):
                    best = fm
                    best_cx = kx
                    best_cy = ky
                kb = _overlap_bound(p, side, bx0[j], by0[j], bx1[j], by1[j], fm, c.key,
                                    best + margin, &along)
                if kb <= best + margin:
                    upper = dmax(upper, kb)
                else:
                    kid.key = kb
                    kid.x0 = bx0[j]
                    kid.y0 = by0[j]
                    kid.x1 = bx1[j]
                    kid.y1 = by1[j]
                    kid.flag = along
                    if heap_push(&h, kid) != 0:
                        raise MemoryError()
        return best, best_cx, best_cy, dmax(upper, best), cells
    finally:
        free(h.data)
