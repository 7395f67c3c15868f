"""Value types produced by the parser: Pauli strings and parameter ranges."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Tuple

import numpy as np

from wywitness.exceptions import InvalidRange, ParseError
from wywitness.matcore import Observable, pauli

PAULI_ALPHABET = "IXYZ"
QUBITS = 2

# Grid points are rounded so that 0.1 + 2 * 0.1 prints as 0.3
GRID_DIGITS = 12


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Pauli operators, written like ``XY``.

    Attributes:
        text: One letter from I, X, Y, Z per qubit.

    """

    text: str

    @classmethod
    def parse(cls, text: str, offset: int = 0, qubits: int = QUBITS) -> PauliString:
        """Validates ``text`` and wraps it as a PauliString.

        Args:
            text: Candidate Pauli string.
            offset: Position of ``text`` within a larger input, for error reporting.
            qubits: Required number of letters.

        Raises:
            ParseError: At the first character outside the alphabet, or at the
                length boundary if the string has the wrong length.

        Examples:
            >>> PauliString.parse("XY")
            PauliString(text='XY')

        """
        for index, ch in enumerate(text):
            if ch not in PAULI_ALPHABET:
                raise ParseError(
                    f"Invalid Pauli label '{ch}' in '{text}', expected one of "
                    f"{', '.join(PAULI_ALPHABET)}",
                    offset + index,
                )
        if len(text) != qubits:
            raise ParseError(
                f"Pauli string '{text}' has {len(text)} letters, expected {qubits}",
                offset + min(len(text), qubits),
            )
        return cls(text)

    def matrix(self) -> Observable:
        """Returns the Kronecker product of the single-qubit Pauli matrices."""
        return reduce(np.kron, (pauli(ch) for ch in self.text))

    def __str__(self) -> str:
        return self.text


def parse_observable(text: str) -> Observable:
    """Parses a two-qubit Pauli string like ``ZI`` into its 4x4 matrix.

    Raises:
        ParseError: If ``text`` does not match ``^[IXYZ]{2}$``.

    """
    return PauliString.parse(text).matrix()


ObservablePair = Tuple[PauliString, PauliString]


def pair_label(pair: ObservablePair) -> str:
    return f"{pair[0]},{pair[1]}"


@dataclass(frozen=True)
class ParamRange:
    """A closed parameter interval ``lo:hi`` with an optional grid step.

    Attributes:
        lo: Lower bound.
        hi: Upper bound, strictly greater than ``lo``.
        step: Grid spacing, or None when only the endpoints matter.

    """

    lo: float
    hi: float
    step: Optional[float] = None

    def __post_init__(self):
        for name in ("lo", "hi"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidRange(f"Range bound {name} must be finite.")
        if not self.lo < self.hi:
            raise InvalidRange(
                f"Range start {self.lo} must be below its end {self.hi}."
            )
        if self.step is not None and not (math.isfinite(self.step) and self.step > 0):
            raise InvalidRange(f"Range step must be positive, got {self.step}.")

    def grid(self) -> Tuple[float, ...]:
        """Returns the ascending grid lo, lo + step, ... up to and including hi.

        Examples:
            >>> ParamRange(0.0, 0.3, 0.1).grid()
            (0.0, 0.1, 0.2, 0.3)

        Raises:
            InvalidRange: If the range has no step.

        """
        if self.step is None:
            raise InvalidRange(f"Range {self} needs a step to define a grid.")
        count = int(math.floor((self.hi - self.lo) / self.step + 1e-9))
        points = [round(self.lo + k * self.step, GRID_DIGITS) for k in range(count + 1)]
        return tuple(point for point in points if point <= self.hi)

    def __str__(self) -> str:
        bounds = f"{self.lo!r}:{self.hi!r}"
        return bounds if self.step is None else f"{bounds}:{self.step!r}"
