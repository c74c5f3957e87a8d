"""Exception hierarchy shared by all realtori modules."""


class RealToriError(Exception):
    """Base class; the CLI maps every subclass to exit status 1."""


class UnboundedError(RealToriError):
    pass


class NotFullDimensionalError(RealToriError):
    pass


class EmptyPolytopeError(RealToriError):
    pass


class DimensionMismatchError(RealToriError):
    pass


class NotDelzantError(RealToriError):
    pass


class NotMonotoneError(RealToriError):
    pass


class PointOutsideError(RealToriError):
    pass


class NotInChamberError(RealToriError):
    pass


class NoSymmetricPointOnFacetError(RealToriError):
    pass


class ProbeError(RealToriError):
    pass


class ScaleOutOfRangeError(RealToriError):
    pass


class NonConvexImageError(RealToriError):
    pass


class NotAProductError(RealToriError):
    pass


class UnknownNameError(RealToriError):
    pass


class ParseError(RealToriError):
    """Malformed polytope text; carries 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
