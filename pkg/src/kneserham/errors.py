"""Exception hierarchy shared by every module."""


class KneserError(Exception):
    """Base class for all library errors."""


class InvalidSizeError(KneserError, ValueError):
    """Polygon size (or permutation length) outside the supported range."""


class TooSmallError(InvalidSizeError):
    pass


class UnsupportedSizeError(InvalidSizeError):
    """The object requested does not exist at this size (e.g. no cycle in KG(T_4))."""


class NotPresentError(KneserError, KeyError):
    pass


class DecodeError(KneserError, ValueError):
    """Text does not describe a valid triangulation."""


class SizeTwoOrbitError(KneserError, ValueError):
    pass


class PreconditionError(KneserError, ValueError):
    pass


class ParseError(KneserError, ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InvariantError(KneserError, AssertionError):
    """An internal invariant failed; this signals a bug, never bad input."""
