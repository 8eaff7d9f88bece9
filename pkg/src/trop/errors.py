"""Exception hierarchy shared by the whole package."""


class TropError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(TropError):
    """Operands have incompatible dimensions or orientations."""


class DomainError(TropError):
    """A value lies outside the semiring domain required by an operation."""


class PreconditionError(TropError):
    """An operation's stated precondition does not hold for the inputs."""


class SizeLimitError(TropError):
    """Input exceeds the guarded size for a combinatorial search."""


class VerificationError(TropError):
    """An internally constructed witness failed its own re-verification."""


class ParseError(TropError):
    """Malformed text input; carries 1-based line/column of the offence."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
