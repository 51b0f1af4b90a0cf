"""Exception hierarchy shared by all edp modules."""

from __future__ import annotations


class EdpError(Exception):
    """Base class for every error raised by this package."""


class DegreeCapExceeded(EdpError, ValueError):
    pass


class DomainError(EdpError, ValueError):
    pass


class UnsupportedComplexAbscissa(EdpError, TypeError):
    pass


class DerivativeUndefined(EdpError, ValueError):
    pass


class ZeroRealPart(EdpError, ZeroDivisionError):
    pass


class NotPTForm(EdpError, ValueError):
    pass


class NegativeDiscriminant(EdpError, ValueError):
    pass


class InadmissibleLevel(EdpError, ValueError):
    pass


class PreconditionError(EdpError, ValueError):
    pass


class QuadratureNotConverged(EdpError, ArithmeticError):
    """Raised when two successive refinement levels never agree to tolerance.

    The last estimate is kept on the exception so callers can still report it.
    """

    def __init__(self, message: str, value: complex = complex("nan"), error: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.error = error


class ZeroNorm(EdpError, ZeroDivisionError):
    pass


class EndpointNotDecaying(EdpError, ArithmeticError):
    pass


class NoSignChange(EdpError, ValueError):
    pass


class MaxIterations(EdpError, RuntimeError):
    pass


class ConfigError(EdpError, ValueError):
    pass
