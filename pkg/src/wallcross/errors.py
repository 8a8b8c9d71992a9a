"""Exception hierarchy."""


class WallcrossError(Exception):
    """Base class for all errors raised by this package."""


class LatticeError(WallcrossError, ValueError):
    """Invalid intersection lattice, divisor, or frame data."""


class PreconditionError(WallcrossError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class ZeroChargeError(PreconditionError):
    """The central charge of the class vanishes at the given point."""


class EmptySliceError(PreconditionError):
    """The wall has no semicircle in the requested plane."""


class NestingError(WallcrossError, RuntimeError):
    """Two walls against the same base cross transversally (should never happen)."""


class BertramError(WallcrossError, RuntimeError):
    """A reduction step produced a wall that does not enclose its parent."""
