"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`ZetaError`,
so the CLI can report the class name and exit with status 1.
"""

from __future__ import annotations


class ZetaError(Exception):
    """Base class for computation errors."""


class PolySyntaxError(ZetaError, ValueError):
    """Malformed polynomial expression."""


class NegativeExponent(ZetaError, ValueError):
    """Exponent is not a non-negative integer."""


class VarOutOfRange(ZetaError, ValueError):
    """Variable index exceeds the declared number of variables."""


class DimensionMismatch(ZetaError, ValueError):
    pass


class ConstantPolynomial(ZetaError, ValueError):
    pass


class ZeroPoint(ZetaError, ValueError):
    pass


class TopVanishes(ZetaError, ArithmeticError):
    """The top-degree part of f vanishes at a face point."""


class MahlerViolation(ZetaError):
    def __init__(self, message: str, witness=None, index: int | None = None):
        super().__init__(message)
        self.witness = witness
        self.index = index


class PoleAt(ZetaError):
    def __init__(self, s0):
        super().__init__(f"s is a pole candidate s0 = {s0}")
        self.s0 = s0


class NotACandidate(ZetaError, ValueError):
    pass


class InterpolationIllConditioned(ZetaError):
    pass


class NotConvergent(ZetaError, ValueError):
    pass


class ShiftOutOfRange(ZetaError, ValueError):
    pass
