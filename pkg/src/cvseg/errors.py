"""Exception types shared across the package."""


class CvsegError(Exception):
    """Base class for all package errors."""


class ParameterError(CvsegError, ValueError):
    """A scalar parameter or init spec violates its stated constraints."""


class ShapeError(CvsegError, ValueError):
    """Two fields that must share dimensions do not."""


class InputError(CvsegError):
    """An input file is missing, unreadable, or too small to segment."""


class OutputError(CvsegError):
    """An output path cannot be written."""


class NumericalBlowupError(CvsegError, ArithmeticError):
    """A scheme produced a non-finite value; carries pixel/iteration context."""

    def __init__(self, message, pixel=None, iteration=None):
        super().__init__(message)
        self.pixel = pixel
        self.iteration = iteration
