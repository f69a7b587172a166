"""L1-plane isoperimetry toolkit."""

from l1iso.errors import (
    DegenerateArea,
    EvaluationBudgetExceeded,
    GenerationFailed,
    GridTooFine,
    L1IsoError,
    NegativeBeyondTolerance,
    NonFiniteCoordinate,
    NonPositiveResolution,
    NonPositiveScale,
    NonPositiveTolerance,
    ParamOutOfRange,
    ParseError,
    PolygonError,
    RangeError,
    SelfIntersecting,
    TooFewVertices,
)
from l1iso.extremal import (
    ClosedForm,
    FamilySpec,
    closed_form,
    gen_corner_deleted,
    gen_family,
    gen_rectangle,
    gen_sandwich,
    gen_staircase,
    staircase_corpus,
)
from l1iso.fitting import (
    FitResult,
    OverlapFit,
    brute_force_fit_oracle,
    fit_square_hausdorff,
    fit_square_overlap,
)
from l1iso.geometry import (
    Point,
    Polygon,
    Rect,
    RectParams,
    Square,
    area,
    bounding_rect,
    clip_to_square,
    l1_perimeter,
    rect_params,
    reflect_x,
    reflect_y,
    scale,
    swap_xy,
    transform,
    translate,
    validate_polygon,
)
from l1iso.isoperimetry import (
    CheckRecord,
    IsoReport,
    check_lemma_alpha,
    check_lemma_excluded,
    check_lemma_hull,
    check_lemma_mu,
    check_prop_area,
    check_theorem_main,
    deficit,
    equality_ratio,
    full_report,
)
from l1iso.kernels import BACKEND
from l1iso.metrics import (
    CertifiedValue,
    dist_linf_point_to_polygon,
    dist_linf_point_to_square,
    hausdorff_linf,
)

__version__ = "0.1.0"
