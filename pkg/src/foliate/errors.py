"""Exception hierarchy shared by every module."""


class FoliateError(Exception):
    """Base class for all library errors."""


class ParseError(FoliateError, ValueError):
    """A line of an input document could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


# triangulation validation
class NotClosed(FoliateError):
    pass


class BadLink(FoliateError):
    pass


class Degenerate(FoliateError):
    pass


class BadSurface(FoliateError):
    pass


class TooFewLayers(FoliateError):
    pass


class UnknownVertex(FoliateError, KeyError):
    pass


# directions
class UnknownEdge(FoliateError):
    pass


class DuplicateEdge(FoliateError):
    pass


class MissingEdge(FoliateError):
    pass


class NoTotalOrder(FoliateError):
    """Some tetrahedron carries a directed 3-cycle."""

    def __init__(self, tet, cycle):
        super().__init__(f"tetrahedron {tet} is not totally ordered (cycle {cycle})")
        self.tet = tet
        self.cycle = cycle


class NotRecurrent(FoliateError):
    pass


class DomainError(FoliateError, ValueError):
    pass


# fibration
class EmptyMatrix(FoliateError, ValueError):
    pass


class BadWeights(FoliateError):
    pass


class ThetaCollision(FoliateError):
    def __init__(self, theta, vertex, suggestion=None):
        msg = f"theta {theta} coincides with the phase of vertex {vertex}"
        if suggestion is not None:
            msg += f"; try theta {suggestion}"
        super().__init__(msg)
        self.theta = theta
        self.vertex = vertex
        self.suggestion = suggestion


# normal surfaces
class InvalidVector(FoliateError):
    pass


# germs
class LoopNotClosed(NotClosed):
    """A loop is not a closed edge path in the 1-skeleton."""


class BudgetTooLarge(FoliateError):
    pass
