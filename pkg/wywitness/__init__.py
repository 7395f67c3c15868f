"""Entanglement detection with skew-information uncertainty relations."""

import argparse
import io
import logging
import sys
from typing import IO, List, Optional, Sequence, Tuple, Union

import numpy as np

from wywitness.commands import cmd_check, cmd_eval, cmd_sweep, cmd_threshold
from wywitness.criteria import COMPUTED_CRITERIA, CriterionId
from wywitness.exceptions import NumericalFailure, ParseError, WitnessError
from wywitness.keys import (
    ALL_CRITERIA,
    CRITERION_NAMES,
    DEFAULT_RANGES,
    FALLBACK_OBSERVABLES,
    OUTPUT_FORMATS,
    default_observables,
    default_sweep_param,
)
from wywitness.matcore import DensityMatrix
from wywitness.parser import parse_pair, parse_range, parse_state
from wywitness.renderers import get_renderer
from wywitness.serial import dumps, loads
from wywitness.states import StateFamily, StateSpec
from wywitness.syntax import ObservablePair, ParamRange, pair_label

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3

logger = logging.getLogger(__name__)


def load(stream: Union[str, IO], tol: Optional[float] = None) -> DensityMatrix:
    """Parse a JSON density-matrix document into a validated DensityMatrix.

    Args:
        stream: File object or string containing the JSON document
        tol: Validity tolerance for trace, Hermiticity and positivity

    Raises:
        TypeError: If stream is neither a string or a file object

    """

    if isinstance(stream, io.TextIOBase):
        text = stream.read()
    elif isinstance(stream, str):
        text = stream
    else:
        raise TypeError("Input stream must be a string or file object.")
    return loads(text, tol)


def dump(rho: DensityMatrix, file_object: IO = None) -> Optional[str]:
    """Serialize a DensityMatrix into its JSON document form.

    Args:
        rho: The density matrix to be serialized
        file_object: An optional file object to save the JSON string to

    Returns:
        A JSON string if no file_object is passed

    """
    result = dumps(rho)
    if file_object:
        file_object.write(result)
        return None
    else:
        return result


def parse_criteria(text: str) -> Optional[List[CriterionId]]:
    """Parses a comma-separated criterion list; ``all`` returns None.

    Raises:
        ParseError: At the first unknown criterion name.

    """
    if text.strip() == ALL_CRITERIA:
        return None
    criteria = []
    position = 0
    for name in text.split(","):
        key = name.strip()
        if key not in CRITERION_NAMES:
            raise ParseError(
                f"Unknown criterion '{key}', expected {ALL_CRITERIA} or one of "
                f"{', '.join(CRITERION_NAMES)}",
                position,
            )
        criteria.append(CRITERION_NAMES[key])
        position += len(name) + 1
    return criteria


def _pairs(texts: Optional[Sequence[str]], family: StateFamily) -> List[ObservablePair]:
    if not texts:
        texts = [",".join(default_observables(family))]
    return [parse_pair(text) for text in texts]


def _range(text: Optional[str], family: StateFamily, param: str) -> ParamRange:
    if text is None:
        text = DEFAULT_RANGES.get((family, param), "0:1:0.01")
    return parse_range(text)


def _state_and_param(args: argparse.Namespace) -> Tuple[StateSpec, str]:
    spec = parse_state(args.state)
    param = args.param or default_sweep_param(spec.family)
    return spec, param


def _metadata(args: argparse.Namespace, **extra: str) -> List[Tuple[str, str]]:
    metadata = [("command", args.command)]
    metadata.extend((key, value) for key, value in extra.items())
    if args.tol is not None:
        metadata.append(("tol", repr(args.tol)))
    return metadata


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as file:
            file.write(text)


def run_eval(args: argparse.Namespace) -> str:
    spec = parse_state(args.state)
    pair = _pairs(args.obs, spec.family)[0]
    reports = cmd_eval(spec, parse_criteria(args.criterion), pair, args.tol, args.seed)
    return get_renderer(args.format).render_reports(reports)


def run_check(args: argparse.Namespace) -> str:
    texts = args.obs or [",".join(FALLBACK_OBSERVABLES)]
    pair = parse_pair(texts[0])
    reports = cmd_check(args.file, parse_criteria(args.criterion), pair, args.tol)
    return get_renderer(args.format).render_reports(reports)


def run_sweep(args: argparse.Namespace) -> str:
    spec, param = _state_and_param(args)
    param_range = _range(args.range, spec.family, param)
    criteria = parse_criteria(args.criterion) or list(COMPUTED_CRITERIA)
    pairs = _pairs(args.obs, spec.family)
    rows = cmd_sweep(
        spec, param, param_range, criteria, pairs, args.tol, args.workers, args.seed
    )
    metadata = _metadata(
        args,
        state=str(spec),
        param=param,
        range=str(param_range),
        criteria=",".join(c.value for c in criteria),
        observables=" ".join(pair_label(pair) for pair in pairs),
    )
    return get_renderer(args.format).render_sweep(rows, metadata, args.annotate)


def run_threshold(args: argparse.Namespace) -> str:
    spec, param = _state_and_param(args)
    criteria = parse_criteria(args.criterion)
    if criteria is None or len(criteria) != 1:
        raise ParseError("A threshold search needs exactly one criterion", 0)
    pair = _pairs(args.obs, spec.family)[0]
    param_range = _range(args.range, spec.family, param)
    result = cmd_threshold(
        spec,
        param,
        criteria[0],
        pair,
        param_range,
        args.tol,
        args.verdict_tol,
        args.seed,
    )
    metadata = _metadata(
        args,
        state=str(spec),
        param=param,
        range=str(param_range),
        criterion=criteria[0].value,
        observables=pair_label(pair),
    )
    return get_renderer(args.format).render_threshold(result, metadata)


def _add_criterion_argument(
    parser: argparse.ArgumentParser, default: str = ALL_CRITERIA
) -> None:
    parser.add_argument(
        "--criterion",
        default=default,
        help=(
            f"comma-separated criteria: {ALL_CRITERIA} or any of "
            f"{', '.join(CRITERION_NAMES)} (default: {default})"
        ),
    )


COMMANDS = {
    "eval": run_eval,
    "sweep": run_sweep,
    "threshold": run_threshold,
    "check": run_check,
}


def parse_args(args: Sequence) -> argparse.Namespace:
    """Parse command-line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="store_const",
        dest="log_level",
        const=logging.DEBUG,
        default=logging.WARN,
        help="increase logging verbosity to debug",
    )
    common.add_argument(
        "--obs",
        action="append",
        metavar="A,B",
        help="observable pair as two-qubit Pauli strings, e.g. XY,YX",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help="verdict tolerance (bracket width for threshold); default 1e-9",
    )
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="seed for random states")

    parser = argparse.ArgumentParser(
        description=(
            "Detect entanglement in two-qubit states with skew-information "
            "uncertainty relations evaluated on the partial transpose."
        )
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    eval_parser = subparsers.add_parser(
        "eval", parents=[common], help="evaluate criteria on one state"
    )
    eval_parser.add_argument("--state", required=True, help="e.g. werner:p=0.5")
    eval_parser.add_argument("--format", choices=OUTPUT_FORMATS, default="table")
    _add_criterion_argument(eval_parser)

    check_parser = subparsers.add_parser(
        "check", parents=[common], help="validate a JSON state file and evaluate it"
    )
    check_parser.add_argument("file", help="path to the JSON state file")
    check_parser.add_argument("--format", choices=OUTPUT_FORMATS, default="table")
    _add_criterion_argument(check_parser)

    for name, help_text in (
        ("sweep", "evaluate criteria over a parameter grid"),
        ("threshold", "bisect for the parameter where a verdict changes"),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--state", required=True, help="family and fixed parameters")
        sub.add_argument("--param", help="parameter to vary (default per family)")
        sub.add_argument("--range", metavar="LO:HI[:STEP]", help="parameter range")

    sweep_parser = subparsers.choices["sweep"]
    sweep_parser.add_argument("--format", choices=OUTPUT_FORMATS, default="csv")
    _add_criterion_argument(sweep_parser)
    sweep_parser.add_argument(
        "--annotate",
        action="store_true",
        help="add literature thresholds as NOT_COMPUTED comment rows",
    )
    sweep_parser.add_argument(
        "--workers", type=int, default=1, help="threads evaluating grid points"
    )

    threshold_parser = subparsers.choices["threshold"]
    _add_criterion_argument(threshold_parser, default="proposed")
    threshold_parser.add_argument("--format", choices=OUTPUT_FORMATS, default="table")
    threshold_parser.add_argument(
        "--verdict-tol",
        type=float,
        default=None,
        help="tolerance applied to each verdict during the search",
    )

    return parser.parse_args(args)


def main(args: Sequence[str]) -> int:
    """Runs a command and returns the process exit code."""
    parsed = parse_args(args)
    logging.getLogger().setLevel(parsed.log_level)
    try:
        text = COMMANDS[parsed.command](parsed)
        _emit(text, parsed.out)
    except (NumericalFailure, np.linalg.LinAlgError) as error:
        logger.error("Numerical failure: %s", error)
        return EXIT_NUMERICAL_FAILURE
    except WitnessError as error:
        logger.error("%s: %s", type(error).__name__, error)
        return EXIT_INPUT_ERROR
    except OSError as error:
        logger.error("Cannot write output: %s", error)
        return EXIT_INPUT_ERROR
    return EXIT_OK


def cli():
    """Command-line entry point for wywitness."""
    logger = logging.getLogger()
    logger.setLevel(logging.WARN)

    handler = logging.StreamHandler()
    handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter("%(name)s %(levelname)s: %(message)s")

    handler.setFormatter(formatter)
    logger.addHandler(handler)

    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    cli()
