"""Exception hierarchy shared by every module."""


class BoundScrambleError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(BoundScrambleError, ValueError):
    """A physical or configuration parameter lies outside its domain."""


class DimensionMismatchError(BoundScrambleError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class NotHermitianError(BoundScrambleError, ValueError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NumericalError(BoundScrambleError, ArithmeticError):
    """Base class for failures of the numerical kernels."""


class ConvergenceError(NumericalError):
    """An iterative solver hit its iteration cap."""


class NonPhysicalResultError(NumericalError):
    """A computed density matrix violates Hermiticity, unit trace or positivity."""


class EmptySweepError(BoundScrambleError, ValueError):
    """A sweep produced no records to emit."""
