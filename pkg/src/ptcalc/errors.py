"""Exception hierarchy shared by every ptcalc module."""


class PtcalcError(Exception):
    """Base class for all calculator errors."""


class InvalidSpec(PtcalcError, ValueError):
    pass


class UnsupportedDimension(InvalidSpec):
    """Raised for even (or too small) ambient dimension k."""


class EqualIndices(PtcalcError, ValueError):
    pass


class IndexOutOfRange(PtcalcError, ValueError):
    pass


class SpaceMismatch(PtcalcError, ValueError):
    """Operands live in different rings, or an index is not admitted by the ring."""


class IntegerOverflow(PtcalcError, OverflowError):
    """A coefficient left the signed 64-bit range."""


class NotAZeroDivisor(PtcalcError, ValueError):
    pass


class ObstacleCountTooSmall(PtcalcError, ValueError):
    pass


class TheoremCheckFailed(PtcalcError, RuntimeError):
    """The cup product that should certify the lower bound normalized to zero."""


class KindMismatch(PtcalcError, ValueError):
    pass


class BudgetExceeded(PtcalcError, RuntimeError):
    """The candidate cap was hit before a search level finished.

    ``partial`` holds the best bound found so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ExprSyntaxError(PtcalcError, SyntaxError):
    """Parse failure; ``offset`` is a 0-based byte offset into the UTF-8 input."""

    def __init__(self, message, offset, text=""):
        super().__init__(message)
        self.msg = message
        self.offset = offset
        self.text = text

    def __str__(self):
        return f"{self.msg} at offset {self.offset}"
