"""Exception types shared across the package."""


class CentroidGapError(Exception):
    """Base class for all package errors."""


class DegenerateInput(CentroidGapError):
    """Input points do not define a convex polygon with positive area."""


class OutOfRange(CentroidGapError):
    """Query abscissa lies outside the polygon's projection interval."""


class DomainError(CentroidGapError):
    """Scalar arguments violate a documented domain restriction."""


class SkippedDegenerate(CentroidGapError):
    """Check is undefined for this geometry (e.g. zero right extent)."""


class InternalInvariantViolation(CentroidGapError):
    """A geometric fact that must hold was violated; signals a bug."""


class PolygonFileError(CentroidGapError):
    """Polygon file could not be parsed; message carries diagnostics."""
