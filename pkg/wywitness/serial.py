"""Reads and writes density matrices and reports as JSON-compatible objects.

A density matrix is stored as::

    {"dims": [dimA, dimB], "matrix": [[re, im], [re, im], ...]}

with the dim² entries in row-major order. Python's ``json`` module writes floats
with ``repr`` precision, so a dump followed by a load reproduces every entry
bit for bit.

"""

import json
import math
from typing import Any, Dict, List, Optional

import numpy as np

from wywitness.criteria import CriterionReport
from wywitness.exceptions import DimensionMismatch, ParseError, WitnessError
from wywitness.matcore import DensityMatrix


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"Expected a number for {where}, got {value!r}", 0)
    return float(value)


def _dimension(value: Any) -> int:
    number = _number(value, "dims")
    if not number.is_integer() or number < 1:
        raise ParseError(f"'dims' entries must be positive integers, got {value!r}", 0)
    return int(number)


def density_from_dict(obj: Any, tol: Optional[float] = None) -> DensityMatrix:
    """Builds a validated DensityMatrix from its JSON object form.

    Args:
        obj: Object with ``dims`` and ``matrix`` keys.
        tol: Validity tolerance passed to ``DensityMatrix.from_array``.

    Raises:
        ParseError: If keys are missing or entries are not numbers.
        DimensionMismatch: If the entry count is not (dimA·dimB)².
        InvalidState: If the matrix is not a trace-one Hermitian matrix.

    """
    if not isinstance(obj, dict):
        raise ParseError(f"Expected a JSON object, got {type(obj).__name__}", 0)
    for key in ("dims", "matrix"):
        if key not in obj:
            raise ParseError(f"Missing key '{key}' in state file", 0)
    dims = obj["dims"]
    if not isinstance(dims, list) or len(dims) != 2:
        raise ParseError(f"'dims' must be a list of two integers, got {dims!r}", 0)
    dim_a, dim_b = (_dimension(d) for d in dims)
    entries = obj["matrix"]
    dim = dim_a * dim_b
    if not isinstance(entries, list) or len(entries) != dim * dim:
        count = len(entries) if isinstance(entries, list) else "no"
        raise DimensionMismatch(
            f"Expected {dim * dim} matrix entries for dims {dims}, got {count}."
        )
    values = np.empty(dim * dim, dtype=np.complex128)
    for index, entry in enumerate(entries):
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError(f"Entry {index} must be a [re, im] pair, got {entry!r}", 0)
        values[index] = complex(
            _number(entry[0], f"entry {index}"), _number(entry[1], f"entry {index}")
        )
    return DensityMatrix.from_array(values.reshape(dim, dim), (dim_a, dim_b), tol)


def density_to_dict(rho: DensityMatrix) -> Dict[str, Any]:
    """Returns the JSON object form of a density matrix."""
    return {
        "dims": list(rho.dims),
        "matrix": [[float(z.real), float(z.imag)] for z in rho.matrix.reshape(-1)],
    }


def loads(text: str, tol: Optional[float] = None) -> DensityMatrix:
    """Parses a JSON string into a validated DensityMatrix.

    Raises:
        ParseError: If the text is not valid JSON.

    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(f"Malformed JSON: {error.msg}", error.pos) from None
    return density_from_dict(obj, tol)


def dumps(rho: DensityMatrix) -> str:
    return json.dumps(density_to_dict(rho))


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def _complex_pair(z: complex) -> List[Optional[float]]:
    return [_finite_or_none(z.real), _finite_or_none(z.imag)]


def report_to_dict(report: CriterionReport) -> Dict[str, Any]:
    """Returns a JSON-compatible dict for a report.

    Complex numbers become ``[re, im]`` pairs and non-finite numbers (the -inf margin
    sentinel, NaN on literature rows) become ``null``.

    """
    return {
        "criterion": report.criterion.value,
        "verdict": report.verdict.value,
        "lhs": _complex_pair(report.lhs),
        "rhs": _finite_or_none(report.rhs),
        "margin": _finite_or_none(report.margin),
        "branch_values": [_complex_pair(z) for z in report.branch_values],
        "min_pt_eigenvalue": _finite_or_none(report.min_pt_eigenvalue),
        "diagnostics": [diagnostic.value for diagnostic in report.diagnostics],
        "note": report.note,
        "route_gap": _finite_or_none(report.route_gap),
    }


def read_state_file(path: str, tol: Optional[float] = None) -> DensityMatrix:
    """Loads a state from a JSON file on disk.

    Raises:
        WitnessError: If the file cannot be read.

    """
    try:
        with open(path, encoding="utf-8") as file:
            text = file.read()
    except OSError as error:
        raise WitnessError(
            f"Cannot read state file '{path}': {error.strerror}"
        ) from None
    return loads(text, tol)
