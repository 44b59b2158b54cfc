"""Exception types raised across the package."""


class AbelGPError(Exception):
    """Base class for all package errors."""


class DomainError(AbelGPError, ValueError):
    """Argument outside the real domain of a function or parametrisation."""


class ParameterError(AbelGPError, ValueError):
    """Invalid parameter set (e.g. a non-positive integer lower parameter)."""


class PoleError(AbelGPError, ZeroDivisionError):
    """Evaluation at a pole (vanishing denominator)."""


class SingularJet(PoleError):
    pass


class SingularCoeffs(PoleError):
    pass


class SingularParams(ParameterError):
    """Abel parameters at a singular value (c1 = -3/2 or c2 = 0)."""


class ComplexParamsError(ParameterError):
    """Hypergeometric parameters would be complex."""


class GridError(AbelGPError, ValueError):
    pass


class IntegratorError(AbelGPError, RuntimeError):
    pass


class InversionError(AbelGPError, ValueError):
    """Slow variable outside the attainable range of the parametrisation."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval
