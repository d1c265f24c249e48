"""
Errors raised by the triangulation, normal surface and boundary modules.
"""


class TopologyError(Exception):
    """Base class for every error raised by this project."""


class TriangulationParseError(TopologyError):
    """The triangulation file does not follow the line format."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class InvalidTriangulation(TopologyError):
    """The gluing table violates an invariant of an ideal triangulation."""


class NonCuspedLink(InvalidTriangulation):
    """A vertex link is not a torus or a Klein bottle."""


class ClosedTriangulationError(NonCuspedLink):
    """A closed one-vertex triangulation (e = k + 1); only cusped input is supported."""


class AlreadyOrientable(TopologyError):
    """The orientable double cover was requested for an orientable triangulation."""


class IndexOutOfRange(TopologyError, IndexError):
    """A tetrahedron, edge or cusp index is out of range."""


class NotASolution(TopologyError):
    """A vector violates a matching equation."""

    def __init__(self, message, equation=None):
        self.equation = equation
        super().__init__(message)


class ScaleLimit(TopologyError):
    """The system is too large for the fundamental solution enumeration."""


class MathematicalAssertionError(TopologyError):
    """A theorem-level self check failed; this indicates a bug, not bad input."""


class BasisDefect(MathematicalAssertionError):
    """The canonical basis does not span the compatibility solution space."""


class DimensionMismatch(MathematicalAssertionError):
    """The Q-matching nullity differs from the predicted dimension."""


class NotACycle(MathematicalAssertionError):
    """A boundary chain is not a 1-cycle on its cusp complex."""
