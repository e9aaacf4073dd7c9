"""Exception hierarchy shared by every module."""


class LcpError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(LcpError, ValueError):
    """Shapes, ranks or other structural preconditions are violated."""


class MetricError(MalformedInputError):
    """A Gram matrix is not symmetric positive definite."""


class RepresentationError(LcpError):
    """A family of matrices fails the representation identity.

    ``pair`` holds the offending basis pair ``(i, j)``.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ClosednessError(LcpError):
    """A 1-form does not vanish on the derived algebra (or is zero where
    a nonzero closed form is required)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class IdealError(LcpError):
    """A subspace required to be an ideal is not one."""


class UsageError(LcpError):
    """An operation was called outside its documented precondition."""


class DomainError(LcpError, ValueError):
    """A scalar parameter lies outside the allowed range."""


class DegenerateXiError(DomainError):
    """The LCP extension needs a non-unimodular base algebra."""


class ConstructionError(LcpError):
    """A factory produced an object that failed its own verification."""


class ParseError(LcpError):
    """A candidate document could not be parsed."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class MalformedRationalError(ParseError):
    """A rational string does not match ``-?digits(/digits)?`` or has a
    zero denominator."""
