"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: structural problems exit 1, failed
mathematical verification exits 2, resource caps exit 3.
"""


class HQuandleError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class StructuralError(HQuandleError, ValueError):
    """Malformed input: wrong shape, out-of-range index, size mismatch."""


class ParseError(StructuralError):
    """A text or JSON input could not be parsed."""

    def __init__(self, message, term=None):
        if term is not None:
            message = f"{message} (in {term!r})"
        super().__init__(message)
        self.term = term


class VerificationError(HQuandleError):
    """Input is well formed but fails a mathematical check."""

    exit_code = 2

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ColoringError(VerificationError):
    """An assignment violates the colouring rule at some crossing."""

    def __init__(self, message, crossing=None):
        super().__init__(message, witness=crossing)
        self.crossing = crossing


class DecompositionError(VerificationError):
    """A quandle does not split as a product over the given projection."""


class ResourceCapError(HQuandleError):
    """Requested computation exceeds a configured size cap."""

    exit_code = 3

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class RingMismatchError(StructuralError):
    """Cochains over different coefficient rings were combined."""
