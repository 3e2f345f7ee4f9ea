"""Exception hierarchy shared by every layer of the package."""


class ModLatticeError(Exception):
    """Base class; ``exit_code`` is what the command line returns."""

    exit_code = 5


class InvalidSpec(ModLatticeError, ValueError):
    exit_code = 3


class UnsupportedRing(InvalidSpec):
    exit_code = 3


class ParseError(ModLatticeError, ValueError):
    exit_code = 2


class BoundExceeded(ModLatticeError):
    exit_code = 4


class NotProper(ModLatticeError, ValueError):
    exit_code = 5


class RingMismatch(ModLatticeError, ValueError):
    exit_code = 5


class DivisionByZero(ModLatticeError, ZeroDivisionError):
    exit_code = 5


class RequiresFactorization(ModLatticeError):
    """Raised instead of guessing when a factorization exceeds the configured bound."""

    exit_code = 3


class UnknownLaw(ModLatticeError, KeyError):
    exit_code = 2
