"""Exception hierarchy."""


class L1IsoError(Exception):
    """Base class for all package errors."""


class PolygonError(L1IsoError, ValueError):
    """Input does not describe a valid simple polygon."""


class TooFewVertices(PolygonError):
    pass


class NonFiniteCoordinate(PolygonError):
    pass


class DegenerateArea(PolygonError):
    pass


class SelfIntersecting(PolygonError):
    pass


class NonPositiveScale(L1IsoError, ValueError):
    pass


class NonPositiveResolution(L1IsoError, ValueError):
    pass


class NonPositiveTolerance(L1IsoError, ValueError):
    pass


class ParamOutOfRange(L1IsoError, ValueError):
    pass


class GridTooFine(L1IsoError, RuntimeError):
    """Oracle grid would exceed the evaluation cap."""


class EvaluationBudgetExceeded(L1IsoError, RuntimeError):
    """Optimizer ran out of objective evaluations before certifying."""


class GenerationFailed(L1IsoError, RuntimeError):
    pass


class NegativeBeyondTolerance(L1IsoError, ArithmeticError):
    """Isoperimetric deficit came out clearly negative: a geometry bug."""


class ParseError(L1IsoError, ValueError):
    """Malformed polygon document or CLI spec string."""


class RangeError(L1IsoError, ValueError):
    """Bad START:STOP:COUNT parameter range."""
