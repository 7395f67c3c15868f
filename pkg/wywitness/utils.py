"""Tolerance defaults and small formatting helpers."""

import math
import os
from typing import Optional

from wywitness.exceptions import WitnessError

# Absolute tolerance for state validity (trace, Hermiticity, positivity)
VALIDITY_TOL: float = 1e-9
# Absolute tolerance for reconstruction assertions, e.g. sqrt(m)**2 == m
RECONSTRUCTION_TOL: float = 1e-10
# Absolute tolerance applied to criterion margins and branch realness
VERDICT_TOL: float = 1e-9
# Eigenvalues below this (relative) magnitude are rounding noise
NOISE_FLOOR: float = 1e-14

TOL_ENV_VAR = "WYWITNESS_TOL"


def resolve_tol(tol: Optional[float] = None, default: float = VERDICT_TOL) -> float:
    """Returns the tolerance to use for a call.

    An explicit argument wins, then the ``WYWITNESS_TOL`` environment variable,
    then the default.

    Args:
        tol: Tolerance passed by the caller, or None.
        default: Fallback used when neither the argument nor the environment
            variable is set.

    Raises:
        WitnessError: If the tolerance is negative or the environment variable
            does not hold a number.

    """
    if tol is None:
        raw = os.environ.get(TOL_ENV_VAR)
        if raw is None or raw.strip() == "":
            return default
        try:
            tol = float(raw)
        except ValueError:
            raise WitnessError(f"{TOL_ENV_VAR}={raw!r} is not a number.") from None
    if not math.isfinite(tol) or tol < 0:
        raise WitnessError(
            f"Tolerance must be a finite non-negative number, not {tol}."
        )
    return tol


def format_float(value: Optional[float]) -> str:
    """Formats a float with full round-trip precision, stable across runs.

    Examples:
        >>> format_float(0.1)
        '0.1'
        >>> format_float(float("-inf"))
        '-inf'
        >>> format_float(None)
        ''

    """
    if value is None:
        return ""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    # Normalize negative zero so identical inputs always print identically
    return repr(float(value) + 0.0)
