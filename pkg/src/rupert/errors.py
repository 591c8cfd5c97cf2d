"""Exception types shared across the package."""


class RupertError(Exception):
    """Base class for all library errors."""


class DegenerateInput(RupertError):
    """Geometric input too degenerate to process (collinear, coplanar, ...)."""


class NotFound(RupertError):
    """Search budget exhausted without a verified solution.

    This is a budget signal, never a proof that no solution exists.
    """


class InvalidSolution(RupertError):
    """A candidate parameter vector does not describe a valid passage."""


class NotPointSymmetric(RupertError):
    """Operation requires a polyhedron centrally symmetric about the origin."""


class DomainError(RupertError):
    """Argument outside the documented domain of an operation."""


class UnknownSolid(RupertError):
    """Requested solid name is not in the catalog."""


class ParseError(RupertError):
    """Malformed polyhedron or solution file."""


class NotConvexPosition(RupertError):
    """Vertex set contains a point that is not extremal on its 3-D hull."""


class AmbiguousSilhouette(RupertError):
    """Two vertices project onto (nearly) the same hull point."""


class TooLarge(RupertError):
    """Input size exceeds a hard combinatorial guard."""


class NonIntegerCoordinates(RupertError):
    """Operation requires integer vertex coordinates."""
