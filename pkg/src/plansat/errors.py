"""Exception hierarchy shared by every plansat module."""

from __future__ import annotations


class PlansatError(Exception):
    """Base class for all errors raised by plansat."""


class BadParameter(PlansatError, ValueError):
    pass


class VertexCountMismatch(PlansatError, ValueError):
    pass


class NotMaximalPlanar(PlansatError, ValueError):
    pass


class TooFewVertices(PlansatError, ValueError):
    pass


class MalformedRotation(PlansatError, ValueError):
    pass


class InvalidAnchors(PlansatError, ValueError):
    pass


class NotAddable(PlansatError, ValueError):
    pass


class UnknownEdge(PlansatError, KeyError):
    pass


class NotFlippable(PlansatError, ValueError):
    pass


class FlipCreatesParallelEdge(NotFlippable):
    pass


class NotASubgraph(PlansatError, ValueError):
    pass


class PreconditionFailed(PlansatError, ValueError):
    pass


class InternalClaimFailed(PlansatError, AssertionError):
    """A statement guaranteed by a proof did not hold on a concrete input."""


class InsufficientTriangularFaces(InternalClaimFailed):
    pass


class TooLarge(PlansatError, ValueError):
    pass


class SearchLimitExceeded(PlansatError, RuntimeError):
    pass


class ParseError(PlansatError, ValueError):
    pass
