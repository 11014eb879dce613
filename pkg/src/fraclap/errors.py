"""Exception hierarchy shared by every fraclap module."""


class FraclapError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FraclapError, ValueError):
    """Argument outside the domain where a quantity is defined."""


class RangeError(FraclapError, OverflowError):
    """Result would overflow double precision."""


class PoleError(DomainError):
    """Evaluation at (or too close to) a pole.

    The offending location is kept in ``pole`` so callers can report it.
    """

    def __init__(self, message, pole):
        super().__init__(message)
        self.pole = pole


class EvaluationError(FraclapError, ArithmeticError):
    """An integrand returned NaN/Inf where no recovery is possible."""


class ConvergenceError(FraclapError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""


class CalibrationError(FraclapError, ArithmeticError):
    """Ring-source calibration is degenerate."""


class UsageError(FraclapError, ValueError):
    """An operation was called with parameters it does not support."""
