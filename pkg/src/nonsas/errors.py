"""Exception hierarchy."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class CoincidentPoints(GeometryError):
    pass


class IdenticalLines(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class DegeneratePoints(GeometryError):
    pass


class PointOnLine(GeometryError):
    pass


class DistinctVertices(GeometryError):
    pass


class CollinearRays(GeometryError):
    pass


class VertexMismatch(GeometryError):
    pass


class OutOfDomain(ValueError):
    pass


class RangeOverflow(ValueError):
    pass


class PrecisionExhausted(ArithmeticError):
    pass


class MalformedSpec(ValueError):
    """A scheme or domain description that violates its invariants."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class InsufficientDomain(ValueError):
    pass
