"""Exception hierarchy shared by every linspect module."""


class LinspectError(Exception):
    """Base class for all errors raised by linspect."""


class ContractError(LinspectError, ValueError):
    """Caller broke a documented precondition."""


class DimensionError(ContractError):
    pass


class ParameterError(ContractError):
    pass


class ScheduleError(ContractError):
    pass


class RangeError(ContractError):
    """Frequency outside the admissible band (e.g. above Nyquist)."""

    def __init__(self, message, omega=None):
        super().__init__(message)
        self.omega = omega


class NumericalError(LinspectError, ArithmeticError):
    """A numerical procedure failed on otherwise valid input."""


class ConvergenceError(NumericalError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class MatrixOverflowError(NumericalError):
    pass


class SingularMatrixError(NumericalError):
    """Pivot fell below tolerance. ``column`` names the offending column and
    ``omega`` is filled in by frequency-response code."""

    def __init__(self, message, column=None, omega=None):
        super().__init__(message)
        self.column = column
        self.omega = omega


class UndefinedRateError(NumericalError):
    pass


class DivergenceError(NumericalError):
    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class EvaluationError(NumericalError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class LinearizationWindowError(NumericalError):
    pass


class TrimError(NumericalError):
    def __init__(self, message, residual=None, x_best=None):
        super().__init__(message)
        self.residual = residual
        self.x_best = x_best


class NormalizationError(ContractError):
    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class ComparisonError(ContractError):
    pass


class InsufficientDataError(NumericalError):
    pass
