"""Exception types raised by the library.

Every error derives from :class:`LatticeError` (itself a ``ValueError``) so
callers can catch the whole family at once. The CLI maps them to exit codes.
"""


class LatticeError(ValueError):
    """Base class for all library errors."""


class NotPrime(LatticeError):
    pass


class TooSmall(LatticeError):
    pass


class ZeroResidue(LatticeError):
    pass


class ZeroIndex(LatticeError):
    pass


class OutOfRange(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class DimensionTooLarge(LatticeError):
    pass


class BadTolerance(LatticeError):
    pass


class SizeGuard(LatticeError):
    """Problem size exceeds a hard limit and no override was given."""
