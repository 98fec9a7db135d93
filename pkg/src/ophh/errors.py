"""Exception types shared across the package."""


class OphhError(Exception):
    pass


class CompositionNotZero(OphhError, ArithmeticError):
    """A pair of maps expected to compose to zero does not."""


class DSquareNonzero(OphhError, ArithmeticError):
    """A constructed differential does not square to zero.

    ``witness`` holds a basis label on which d∘d is nonzero, when known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotClosed(OphhError):
    """A claimed subcomplex is not closed under the differential."""


class MixingDetected(OphhError):
    """A differential connects summands that should split."""


class SizeLimitExceeded(OphhError):
    """An enumeration exceeded the configured simplex cap."""


class NotSimplyConnectedProxy(OphhError):
    """H^1 of the input space is nonzero over the working field."""


class ParseError(OphhError, ValueError):
    """Malformed input file; carries a line and column."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.column = column
