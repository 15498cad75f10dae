"""Exception types raised by qqdyn.

Every error derives from :class:`QQDynError`, and most also derive from the
closest builtin (``ValueError``, ``ArithmeticError``) so callers can catch
them generically.
"""

__all__ = [
    "QQDynError",
    "ZeroDivisor",
    "ShapeMismatch",
    "NotSquare",
    "LengthMismatch",
    "StructureViolation",
    "Singular",
    "NotHermitian",
    "NotPositive",
    "NotPositiveDefinite",
    "NotAntiHermitian",
    "NotSymmetric",
    "NotPseudoAntiHermitian",
    "MetricNotComplex",
    "StateNotComplex",
    "SimilarityFailed",
    "Defective",
    "EtaUnitarityBreach",
    "InvariantBreach",
    "BadBasis",
    "InvalidParams",
    "ConfigError",
]


class QQDynError(Exception):
    """Base class for all qqdyn errors."""


class ZeroDivisor(QQDynError, ZeroDivisionError):
    pass


class ShapeMismatch(QQDynError, ValueError):
    pass


class NotSquare(ShapeMismatch):
    pass


class LengthMismatch(QQDynError, ValueError):
    pass


class StructureViolation(QQDynError, ValueError):
    """A complex matrix is not in the image of the symplectic embedding."""


class Singular(QQDynError, ArithmeticError):
    pass


class NotHermitian(QQDynError, ValueError):
    pass


class NotPositive(QQDynError, ValueError):
    pass


class NotPositiveDefinite(NotPositive):
    pass


class NotAntiHermitian(QQDynError, ValueError):
    pass


class NotSymmetric(QQDynError, ValueError):
    pass


class NotPseudoAntiHermitian(QQDynError, ValueError):
    pass


class MetricNotComplex(QQDynError, ValueError):
    pass


class StateNotComplex(QQDynError, ValueError):
    pass


class SimilarityFailed(QQDynError, ArithmeticError):
    pass


class Defective(QQDynError, ArithmeticError):
    pass


class EtaUnitarityBreach(QQDynError, ArithmeticError):
    pass


class InvariantBreach(QQDynError, ArithmeticError):
    """A state left the set of valid generalized density matrices."""

    def __init__(self, message, residual_name=None, residual=None):
        super().__init__(message)
        self.residual_name = residual_name
        self.residual = residual


class BadBasis(QQDynError, ValueError):
    pass


class InvalidParams(QQDynError, ValueError):
    pass


class ConfigError(QQDynError, ValueError):
    pass
