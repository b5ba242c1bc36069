"""Exception hierarchy.

Every domain error derives from :class:`WittError`; the CLI prints the
class name verbatim, so names are part of the public surface.
"""


class WittError(Exception):
    """Base class for all domain errors raised by bigwitt."""


class NonPositiveEntry(WittError, ValueError):
    pass


class NotDivisorClosed(WittError, ValueError):
    def __init__(self, t, e):
        self.t = t
        self.e = e
        super().__init__(f"{t} is present but its divisor {e} is missing")


class CeilingExceeded(WittError, ValueError):
    pass


class NotPrime(WittError, ValueError):
    pass


class InvalidModulus(WittError, ValueError):
    pass


class InvalidRing(WittError, ValueError):
    pass


class NotDivisible(WittError, ArithmeticError):
    pass


class TorsionRing(WittError, ArithmeticError):
    pass


class NotInGhostImage(WittError, ArithmeticError):
    def __init__(self, s, msg=None):
        self.s = s
        super().__init__(msg or f"ghost coordinate {s} is not in the image of the ghost map")


class TargetMismatch(WittError, ValueError):
    pass


class SetMismatch(WittError, ValueError):
    pass


class RingMismatch(WittError, ValueError):
    pass


class NotSubset(WittError, ValueError):
    pass


class SizeBound(WittError, ValueError):
    pass


class NonIntegralCoefficient(WittError, ArithmeticError):
    pass


class MissingBinding(WittError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing binding"


class VersionMismatch(WittError, ValueError):
    pass


class CorruptFile(WittError, ValueError):
    pass


class UnknownIdentity(WittError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown identity"


class IdentityFailure(WittError, AssertionError):
    """Raised when a computed identity does not hold; carries the witness."""

    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)
