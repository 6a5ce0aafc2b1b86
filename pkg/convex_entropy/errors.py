"""Exception hierarchy.

Every error carries the process exit code the command-line front end uses
for it, so the CLI never needs a separate lookup table.
"""

from typing import Optional


class ConvexEntropyError(Exception):
    """Base class for all library errors (exit code 4: computation error)."""

    exit_code = 4


class InvalidParameter(ConvexEntropyError, ValueError):
    """A caller passed an argument outside its documented range."""

    exit_code = 2


class BodyFileError(ConvexEntropyError):
    """A body-definition or fuzz-config file could not be parsed."""

    exit_code = 2


class InvalidBody(ConvexEntropyError):
    """Sampled support data does not describe a valid body."""

    exit_code = 3

    def __init__(
        self, message: str, angle: Optional[float] = None, value: Optional[float] = None
    ):
        super().__init__(message)
        self.angle = angle
        self.value = value


class NotConvex(InvalidBody):
    """min(h + h'') fell below the strict-convexity margin."""


class OriginOutside(InvalidBody):
    """The origin is not an interior point of the body."""


class DegeneratePolygon(ConvexEntropyError):
    pass


class NegativeDiscriminant(ConvexEntropyError):
    """The Minkowski discriminant is negative beyond numerical tolerance."""


class DomainError(ConvexEntropyError):
    """A test function was evaluated outside its domain."""


class NotDilationPosition(ConvexEntropyError):
    pass


class QuadratureMismatch(ConvexEntropyError):
    """Two algebraically identical quadratures disagree."""


class PositioningError(ConvexEntropyError):
    exit_code = 5


class SolverFailure(PositioningError):
    """The linear-programming backend did not report an optimum."""


class Infeasible(PositioningError):
    """No translation met the containment constraints within tolerance."""
