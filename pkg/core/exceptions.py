# coding=utf-8
"""Exceptions raised across PauliClock. Numerical ones double as ``ValueError`` so plain callers can catch them."""


class PauliClockException(Exception):
    """Base class of every exception raised by this package."""


class GridError(PauliClockException, ValueError):
    """Invalid clock grid parameters."""


class HamiltonianError(PauliClockException, ValueError):
    """Invalid Hamiltonian expression or matrix."""


class DimensionMismatch(PauliClockException, ValueError):
    """Operands live on different grids or system dimensions."""


class NoSupportError(PauliClockException, ValueError):
    """A history state has no weight at the requested clock reading."""


class WindowTooSmall(PauliClockException, ValueError):
    """The clock window cannot hold the requested Weyl envelope.

    :ivar required: The smallest admissible window length.
    :type required: float
    :vartype required: float
    """
    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class ConfigError(PauliClockException):
    """The scenario configuration does not parse or does not validate."""


class OutputError(PauliClockException):
    """Report files could not be written."""
