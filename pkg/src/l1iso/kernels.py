"""Hot-loop kernels, compiled when possible.

``BACKEND`` is ``"cython"`` when the ``_ckernels`` extension imports and
``"python"`` otherwise.  Setting ``ISO_L1_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("ISO_L1_PURE_PYTHON", "").strip() not in ("", "0"):
    from l1iso import _pykernels as _impl
else:
    try:
        from l1iso import _ckernels as _impl
    except ImportError:  # extension not built
        from l1iso import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

seg_dist_linf = _impl.seg_dist_linf
point_in_polygon = _impl.point_in_polygon
boundary_dist = _impl.boundary_dist
dist_point_polygon = _impl.dist_point_polygon
signed_dist = _impl.signed_dist
dist_points_polygon = _impl.dist_points_polygon
clip_rect_area = _impl.clip_rect_area
clip_rect_areas = _impl.clip_rect_areas
box_sup_dist = _impl.box_sup_dist
overlap_bnb = _impl.overlap_bnb
cross_len_extremes = _impl.cross_len_extremes

__all__ = [
    "BACKEND",
    "seg_dist_linf",
    "point_in_polygon",
    "boundary_dist",
    "dist_point_polygon",
    "signed_dist",
    "dist_points_polygon",
    "clip_rect_area",
    "clip_rect_areas",
    "box_sup_dist",
    "overlap_bnb",
    "cross_len_extremes",
]
