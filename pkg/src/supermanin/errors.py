"""Exception hierarchy.

Everything raised on purpose derives from :class:`SuperManinError` so callers
(the CLI in particular) can tell domain failures apart from programming bugs.
"""


class SuperManinError(Exception):
    """Base class for domain errors."""


class DimensionMismatch(SuperManinError, ValueError):
    pass


class DegeneratePairingError(SuperManinError, ValueError):
    pass


class ParityError(SuperManinError, ValueError):
    """A vector or map does not respect the Z/2 grading."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class NotIdempotentError(SuperManinError, ValueError):
    pass


class SizeCapExceeded(SuperManinError, MemoryError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"component needs ambient dimension {needed}, cap is {cap}")
        self.needed = needed
        self.cap = cap


class FormatMismatch(SuperManinError, ValueError):
    pass


class InvalidStructure(SuperManinError, ValueError):
    """Input data violates an algebraic axiom (associativity, coassociativity, ...)."""


class ConsistencyError(SuperManinError, RuntimeError):
    """An identity that must hold by construction failed; indicates a bug."""
