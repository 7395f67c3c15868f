"""Defines constant tables for the command-line surface and the mini-language."""

from typing import Dict, Tuple, Type

from wywitness import tokens
from wywitness.criteria import COMPUTED_CRITERIA, CriterionId
from wywitness.exceptions import ParamOutOfRange
from wywitness.states import StateFamily

CHARACTER_TO_TOKEN: Dict[str, Type[tokens.Token]] = {
    "\0": tokens.StreamEndToken,
    ":": tokens.ColonToken,
    "=": tokens.EqualsToken,
    ",": tokens.CommaToken,
}

# Names accepted by --criterion. `all` expands to every computed criterion.

ALL_CRITERIA = "all"

CRITERION_NAMES: Dict[str, CriterionId] = {
    criterion.value: criterion for criterion in COMPUTED_CRITERIA
}

# Observable pairs used when --obs is not given, chosen so each family shows its
# textbook behavior out of the box.

DEFAULT_OBSERVABLES: Dict[StateFamily, Tuple[str, str]] = {
    StateFamily.WERNER: ("XY", "YX"),
    StateFamily.WERNER_DERIVATIVE: ("ZI", "IZ"),
    StateFamily.PURE_NONMAX: ("ZZ", "XX"),
    StateFamily.GHZ_W_MIX: ("ZI", "IZ"),
}

FALLBACK_OBSERVABLES: Tuple[str, str] = ("ZI", "IZ")

# The parameter that `sweep` and `threshold` vary when --param is not given, and
# the range they cover when --range is not given.

DEFAULT_SWEEP_PARAM: Dict[StateFamily, str] = {
    StateFamily.WERNER: "p",
    StateFamily.WERNER_DERIVATIVE: "a",
    StateFamily.PURE_NONMAX: "c0",
    StateFamily.GHZ_W_MIX: "p",
}

DEFAULT_RANGES: Dict[Tuple[StateFamily, str], str] = {
    (StateFamily.WERNER, "p"): "0:1:0.01",
    (StateFamily.WERNER_DERIVATIVE, "a"): "0.5:1:0.005",
    (StateFamily.WERNER_DERIVATIVE, "p"): "0:1:0.01",
    (StateFamily.PURE_NONMAX, "c0"): "0.1:0.9:0.1",
    (StateFamily.GHZ_W_MIX, "p"): "0:1:0.01",
}

OUTPUT_FORMATS: Tuple[str, ...] = ("table", "json", "csv")

SWEEP_HEADER: Tuple[str, ...] = (
    "param",
    "criterion",
    "observables",
    "lhs_re",
    "lhs_im",
    "rhs",
    "margin",
    "verdict",
    "min_pt_eig",
)

# Observables column for criteria that take no observables
NO_OBSERVABLES = "-"


def default_observables(family: StateFamily) -> Tuple[str, str]:
    """Returns the default observable pair for a state family."""
    return DEFAULT_OBSERVABLES.get(family, FALLBACK_OBSERVABLES)


def default_sweep_param(family: StateFamily) -> str:
    """Returns the default swept parameter, e.g. 'p' for the Werner family.

    Raises:
        ParamOutOfRange: If the family has no continuous parameter.

    """
    try:
        return DEFAULT_SWEEP_PARAM[family]
    except KeyError:
        raise ParamOutOfRange(
            f"Family '{family.value}' has no default parameter to vary; "
            "pass --param explicitly."
        ) from None
