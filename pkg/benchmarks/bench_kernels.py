"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both implementations are imported side by side, so one run compares them on
identical inputs.  Prints one line per kernel: best-of-N wall time for each
backend and the speedup.
"""

from __future__ import annotations

import argparse
import math
import timeit

from l1iso import _pykernels as py
from l1iso import area
from l1iso.extremal import gen_sandwich, staircase_corpus

try:
    from l1iso import _ckernels as cy
except ImportError:
    cy = None


def _cases():
    stair = staircase_corpus(3, 1)[0]
    sand = gen_sandwich(12, 0.6287, 1.5032)
    sx, sy = list(stair.xs), list(stair.ys)
    wx, wy = list(sand.xs), list(sand.ys)
    pts = [(0.01 * i, 0.013 * i) for i in range(200)]
    r = 1.2716458
    theta = 1.5032 - r
    side = math.sqrt(area(stair))
    return {
        "dist_point_polygon x200": lambda k: [k.dist_point_polygon(sx, sy, x, y) for x, y in pts],
        "clip_rect_area x200": lambda k: [k.clip_rect_area(sx, sy, x, y, x + 0.5, y + 0.5) for x, y in pts],
        "box_sup_dist": lambda k: k.box_sup_dist(wx, wy, -r, -r, r, r, theta, theta, 2.3e-7, 10**6),
        "overlap_bnb": lambda k: k.overlap_bnb(sx, sy, side, 0.3, 0.3, 0.7, 0.7, 0.0, 0.5, 0.5, 1e-6, 10**6),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if cy is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':26s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, fn in _cases().items():
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if cy is None:
            print(f"{name:26s} {1e3 * tp:12.2f} {'-':>12s} {'-':>8s}")
            continue
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:26s} {1e3 * tp:12.2f} {1e3 * tc:12.3f} {tp / tc:7.0f}x")


if __name__ == "__main__":
    main()
