"""Parameterized two-qubit state families with strict domain validation."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

from wywitness.exceptions import NotNormalized, ParamOutOfRange
from wywitness.matcore import (
    DensityMatrix,
    identity,
    ket,
    projector,
    random_density,
    random_separable,
)
from wywitness.serial import read_state_file
from wywitness.utils import VALIDITY_TOL

logger = logging.getLogger(__name__)

ParamValue = Union[str, int, float, complex]

SQRT_HALF = 1 / math.sqrt(2)


class StateFamily(Enum):
    WERNER = "werner"
    WERNER_DERIVATIVE = "werner_derivative"
    PURE_NONMAX = "pure_nonmax"
    GHZ_W_MIX = "ghz_w"
    BELL = "bell"
    MAX_MIXED = "max_mixed"
    CUSTOM = "custom"
    RANDOM = "random"
    RANDOM_SEPARABLE = "random_separable"


# Accepted parameter keys per family, in their canonical order
FAMILY_PARAMS: Dict[StateFamily, Tuple[str, ...]] = {
    StateFamily.WERNER: ("p",),
    StateFamily.WERNER_DERIVATIVE: ("a", "p"),
    StateFamily.PURE_NONMAX: ("c0", "c1"),
    StateFamily.GHZ_W_MIX: ("p",),
    StateFamily.BELL: ("kind",),
    StateFamily.MAX_MIXED: ("dim",),
    StateFamily.CUSTOM: ("file",),
    StateFamily.RANDOM: ("dim", "seed"),
    StateFamily.RANDOM_SEPARABLE: ("dim_a", "dim_b", "terms", "seed"),
}

BELL_KINDS: Tuple[str, ...] = ("phi+", "phi-", "psi+", "psi-")


def _check_unit_interval(name: str, value: float, lo: float = 0.0) -> float:
    value = float(value)
    if not lo <= value <= 1:
        raise ParamOutOfRange(f"Parameter {name}={value} is outside [{lo}, 1].")
    return value


def bell(which: str) -> DensityMatrix:
    """Returns the projector onto one of the four Bell states.

    Args:
        which: One of ``phi+``, ``phi-``, ``psi+`` or ``psi-``.

    Raises:
        ParamOutOfRange: If ``which`` is not a Bell-state label.

    """
    vectors = {
        "phi+": ket("00") + ket("11"),
        "phi-": ket("00") - ket("11"),
        "psi+": ket("01") + ket("10"),
        "psi-": ket("01") - ket("10"),
    }
    try:
        vector = vectors[which] * SQRT_HALF
    except KeyError:
        raise ParamOutOfRange(
            f"Unknown Bell state '{which}', expected one of {', '.join(BELL_KINDS)}."
        ) from None
    return DensityMatrix.from_array(projector(vector), (2, 2))


def max_mixed(dim: int = 4) -> DensityMatrix:
    """Returns the maximally mixed state 𝟙/dim."""
    dim = int(dim)
    if dim < 1:
        raise ParamOutOfRange(f"Dimension must be positive, got {dim}.")
    return DensityMatrix.from_array(identity(dim) / dim)


def werner(p: float) -> DensityMatrix:
    """Returns the Werner state p|ψ−⟩⟨ψ−| + (1 − p)𝟙/4.

    Examples:
        >>> werner(0.5).matrix[1, 2].real
        -0.25

    Raises:
        ParamOutOfRange: If ``p`` is outside [0, 1].

    """
    p = _check_unit_interval("p", p)
    singlet = projector((ket("01") - ket("10")) * SQRT_HALF)
    return DensityMatrix.from_array(p * singlet + (1 - p) * identity(4) / 4, (2, 2))


def werner_derivative(a: float, p: float) -> DensityMatrix:
    """Returns p|ψ⟩⟨ψ| + (1 − p)𝟙/4 with |ψ⟩ = √a|00⟩ + √(1 − a)|11⟩.

    ``a`` is the Schmidt weight; a = ½ gives the Werner-like mixture of |φ+⟩ and
    a = 1 a mixture of the product state |00⟩.

    Raises:
        ParamOutOfRange: If ``a`` is outside [½, 1] or ``p`` outside [0, 1].

    """
    a = _check_unit_interval("a", a, lo=0.5)
    p = _check_unit_interval("p", p)
    vector = math.sqrt(a) * ket("00") + math.sqrt(1 - a) * ket("11")
    return DensityMatrix.from_array(
        p * projector(vector) + (1 - p) * identity(4) / 4, (2, 2)
    )


def pure_nonmax(c0: complex, c1: Optional[complex] = None) -> DensityMatrix:
    """Returns the projector onto c0|00⟩ + c1|11⟩.

    Args:
        c0: Amplitude of |00⟩.
        c1: Amplitude of |11⟩. Defaults to the real value √(1 − |c0|²).

    Raises:
        NotNormalized: If |c0|² + |c1|² differs from 1.

    """
    c0 = complex(c0)
    if c1 is None:
        if abs(c0) > 1:
            raise NotNormalized(f"|c0| = {abs(c0)} exceeds 1.")
        c1 = math.sqrt(1 - abs(c0) ** 2)
    c1 = complex(c1)
    norm = abs(c0) ** 2 + abs(c1) ** 2
    if abs(norm - 1) > VALIDITY_TOL:
        raise NotNormalized(f"|c0|^2 + |c1|^2 = {norm:.12g}, expected 1.")
    return DensityMatrix.from_array(projector(c0 * ket("00") + c1 * ket("11")), (2, 2))


def ghz_state() -> np.ndarray:
    """Returns the three-qubit GHZ projector as an 8x8 array."""
    return projector((ket("000") + ket("111")) * SQRT_HALF)


def w_state() -> np.ndarray:
    """Returns the three-qubit W projector as an 8x8 array."""
    return projector((ket("001") + ket("010") + ket("100")) / math.sqrt(3))


def ghz_reduction() -> np.ndarray:
    """Returns the two-qubit reduction of the GHZ state, diag(½, 0, 0, ½)."""
    return np.diag([0.5, 0, 0, 0.5]).astype(np.complex128)


def w_reduction() -> np.ndarray:
    """Returns the two-qubit reduction of the W state.

    It has weight 1/3 on |00⟩ and all four entries of the {|01⟩, |10⟩} block equal
    to 1/3.

    """
    reduction = np.zeros((4, 4), dtype=np.complex128)
    reduction[0, 0] = 1 / 3
    reduction[1:3, 1:3] = 1 / 3
    return reduction


def ghz_w_mixture(p: float) -> DensityMatrix:
    """Returns (1 − p)ρ_GHZ + pρ_W of the two-qubit GHZ and W reductions.

    The mixture has a positive partial transpose exactly for p ≤ √45 − 6.

    Raises:
        ParamOutOfRange: If ``p`` is outside [0, 1].

    """
    p = _check_unit_interval("p", p)
    mixture = (1 - p) * ghz_reduction() + p * w_reduction()
    return DensityMatrix.from_array(mixture, (2, 2))


def ghz_w_ppt_threshold() -> float:
    """Returns √45 − 6, the positive root of p² + 12p − 9."""
    return math.sqrt(45) - 6


def werner_derivative_entangled_interval(p: float) -> Optional[Tuple[float, float]]:
    """Returns the Schmidt weights for which the Werner derivative has an NPT.

    The state is entangled for a strictly inside ½ ± √((3p − 1)(p + 1))/(4p). The
    interval is symmetric about ½, so only its upper half lies in the family's
    domain.

    Examples:
        >>> werner_derivative_entangled_interval(1.0)
        (0.0, 1.0)
        >>> werner_derivative_entangled_interval(0.3) is None
        True

    """
    p = _check_unit_interval("p", p)
    if p <= 1 / 3:
        return None
    half_width = math.sqrt((3 * p - 1) * (p + 1)) / (4 * p)
    return 0.5 - half_width, 0.5 + half_width


def _param(params: Dict[str, ParamValue], key: str, convert: Callable, default=None):
    if key not in params:
        if default is None:
            raise ParamOutOfRange(f"Missing required parameter '{key}'.")
        return default
    value = params[key]
    try:
        return convert(value)
    except (TypeError, ValueError):
        raise ParamOutOfRange(
            f"Parameter {key}={value!r} has the wrong type for this family."
        ) from None


def _complex(value: ParamValue) -> complex:
    if isinstance(value, str):
        # Accept the common 'i' suffix as well as Python's 'j'
        value = value.replace("i", "j")
    return complex(value)


@dataclass(frozen=True)
class StateSpec:
    """A state family with its parameters, as written ``family:key=value,...``.

    Attributes:
        family: The state family.
        params: Parameter names and values in the order they were given.

    """

    family: StateFamily
    params: Tuple[Tuple[str, ParamValue], ...] = ()

    @property
    def param_dict(self) -> Dict[str, ParamValue]:
        return dict(self.params)

    def with_param(self, key: str, value: ParamValue) -> StateSpec:
        """Returns a copy of this spec with ``key`` set to ``value``."""
        params = dict(self.params)
        params[key] = value
        return StateSpec(self.family, tuple(params.items()))

    def build(self, seed: Optional[int] = None) -> DensityMatrix:
        """Builds the density matrix, see :func:`build_state`."""
        return build_state(self, seed)

    def __str__(self) -> str:
        if not self.params:
            return self.family.value
        params = ",".join(f"{key}={value}" for key, value in self.params)
        return f"{self.family.value}:{params}"


def build_state(spec: StateSpec, seed: Optional[int] = None) -> DensityMatrix:
    """Constructs the density matrix a state spec describes.

    Args:
        spec: Family and parameters.
        seed: Seed for the random families when ``spec`` has none.

    Raises:
        ParamOutOfRange: If a parameter is missing, unknown or outside its domain.

    """
    params = spec.param_dict
    unknown = set(params) - set(FAMILY_PARAMS[spec.family])
    if unknown:
        raise ParamOutOfRange(
            f"Unknown parameter(s) {', '.join(sorted(unknown))} for family "
            f"'{spec.family.value}'; expected {', '.join(FAMILY_PARAMS[spec.family])}."
        )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("Building state %s", spec)

    family = spec.family
    if family == StateFamily.WERNER:
        return werner(_param(params, "p", float))
    elif family == StateFamily.WERNER_DERIVATIVE:
        return werner_derivative(_param(params, "a", float), _param(params, "p", float))
    elif family == StateFamily.PURE_NONMAX:
        c1 = _param(params, "c1", _complex) if "c1" in params else None
        return pure_nonmax(_param(params, "c0", _complex), c1)
    elif family == StateFamily.GHZ_W_MIX:
        return ghz_w_mixture(_param(params, "p", float))
    elif family == StateFamily.BELL:
        return bell(_param(params, "kind", str))
    elif family == StateFamily.MAX_MIXED:
        return max_mixed(_param(params, "dim", int, 4))
    elif family == StateFamily.CUSTOM:
        return read_state_file(_param(params, "file", str))

    default_seed = 0 if seed is None else seed
    seed_value = _param(params, "seed", int, default_seed)
    if family == StateFamily.RANDOM:
        return random_density(_param(params, "dim", int, 4), seed_value)
    elif family == StateFamily.RANDOM_SEPARABLE:
        return random_separable(
            _param(params, "dim_a", int, 2),
            _param(params, "dim_b", int, 2),
            _param(params, "terms", int, 4),
            seed_value,
        )
    raise ParamOutOfRange(f"Unsupported state family {family}.")
