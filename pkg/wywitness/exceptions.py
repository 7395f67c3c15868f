"""Exceptions raised by wywitness."""

from typing import Optional


class WitnessError(ValueError):
    """Base class for all input errors raised by wywitness."""


class NonHermitianInput(WitnessError):
    """Raised when a matrix expected to be Hermitian is not."""


class DimensionMismatch(WitnessError):
    """Raised when matrix shapes or bipartite factor dimensions disagree."""


class InvalidState(WitnessError):
    """Raised when a matrix is not a valid density matrix.

    Attributes:
        trace: The trace of the offending matrix, if known.
        min_eigenvalue: The smallest eigenvalue of the offending matrix, if known.

    """

    def __init__(
        self,
        message: str,
        trace: Optional[complex] = None,
        min_eigenvalue: Optional[float] = None,
    ):
        super().__init__(message)
        self.trace = trace
        self.min_eigenvalue = min_eigenvalue


class ParamOutOfRange(WitnessError):
    """Raised when a state-family parameter lies outside its domain."""


class NotNormalized(WitnessError):
    """Raised when pure-state amplitudes are not normalized."""


class ParseError(WitnessError):
    """Raised when a state spec, range or Pauli string cannot be parsed.

    Attributes:
        position: Character offset of the offending input.

    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidRange(WitnessError):
    """Raised when a sweep or threshold range is empty or has a bad step."""


class NoSignChange(WitnessError):
    """Raised when a threshold search finds the same verdict at both endpoints."""


class NumericalFailure(WitnessError):
    """Raised when a linear-algebra routine fails or produces non-finite output."""
