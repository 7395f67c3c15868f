"""Implementations of the eval, sweep, threshold and check commands.

Commands return data (reports, sweep rows, threshold results); rendering is left to
``wywitness.renderers`` so the same result can be printed as a table, JSON or CSV.

"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from wywitness.criteria import (
    CriterionId,
    CriterionReport,
    evaluate,
    evaluate_all,
)
from wywitness.exceptions import InvalidRange, NoSignChange, NumericalFailure
from wywitness.keys import NO_OBSERVABLES
from wywitness.matcore import DensityMatrix, partial_transpose
from wywitness.serial import read_state_file
from wywitness.states import StateSpec
from wywitness.syntax import ObservablePair, ParamRange, pair_label
from wywitness.utils import resolve_tol

logger = logging.getLogger(__name__)

# Bisection stops after this many halvings even if the bracket is still wide
MAX_BISECTIONS = 200

LabeledReport = Tuple[str, CriterionReport]


@dataclass(frozen=True)
class SweepRow:
    """All reports for one grid point of a sweep.

    Attributes:
        param_value: Value of the swept parameter.
        reports: (observables label, report) pairs in output order.
        min_pt_eigenvalue: Smallest eigenvalue of the state's partial transpose.

    """

    param_value: float
    reports: Tuple[LabeledReport, ...]
    min_pt_eigenvalue: float


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of a threshold search.

    Attributes:
        value: Midpoint of the first refined bracket.
        bracket: The first refined bracket (lo, hi).
        flips: Every refined bracket in which the verdict changes.
        evaluations: Number of criterion evaluations performed.

    """

    value: float
    bracket: Tuple[float, float]
    flips: Tuple[Tuple[float, float], ...]
    evaluations: int


def _order(criteria: Sequence[CriterionId]) -> List[CriterionId]:
    members = list(CriterionId)
    return sorted(set(criteria), key=members.index)


def _evaluate_selected(
    rho: DensityMatrix,
    criteria: Optional[Sequence[CriterionId]],
    pair: ObservablePair,
    tol: Optional[float],
) -> List[CriterionReport]:
    a, b = pair[0].matrix(), pair[1].matrix()
    if criteria is None:
        return evaluate_all(rho, a, b, tol)
    return [evaluate(criterion, rho, a, b, tol) for criterion in _order(criteria)]


def cmd_eval(
    spec: StateSpec,
    criteria: Optional[Sequence[CriterionId]],
    pair: ObservablePair,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> List[CriterionReport]:
    """Evaluates criteria on the state a spec describes.

    Args:
        spec: State family and parameters.
        criteria: Criteria to evaluate, or None for every criterion plus the
            literature reference rows.
        pair: Observables A and B.
        tol: Verdict tolerance.
        seed: Seed for the random state families.

    """
    rho = spec.build(seed)
    return _evaluate_selected(rho, criteria, pair, tol)


def cmd_check(
    path: str,
    criteria: Optional[Sequence[CriterionId]],
    pair: ObservablePair,
    tol: Optional[float] = None,
) -> List[CriterionReport]:
    """Loads a JSON state file, validates it and evaluates criteria on it.

    Raises:
        ParseError: If the file is not valid JSON in the state format.
        InvalidState: If the matrix is not a trace-one Hermitian matrix.

    """
    rho = read_state_file(path)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("Loaded %r from %s", rho, path)
    return _evaluate_selected(rho, criteria, pair, tol)


def _sweep_point(
    spec: StateSpec,
    param: str,
    value: float,
    criteria: Sequence[CriterionId],
    pairs: Sequence[ObservablePair],
    tol: Optional[float],
    seed: Optional[int],
) -> SweepRow:
    rho = spec.with_param(param, value).build(seed)
    reports: List[LabeledReport] = []
    for criterion in criteria:
        if criterion == CriterionId.PPT:
            a, b = pairs[0][0].matrix(), pairs[0][1].matrix()
            reports.append((NO_OBSERVABLES, evaluate(criterion, rho, a, b, tol)))
            continue
        for pair in pairs:
            a, b = pair[0].matrix(), pair[1].matrix()
            reports.append((pair_label(pair), evaluate(criterion, rho, a, b, tol)))
    min_pt_eigenvalue = partial_transpose(rho).min_eigenvalue
    return SweepRow(value, tuple(reports), min_pt_eigenvalue)


def cmd_sweep(
    spec: StateSpec,
    param: str,
    param_range: ParamRange,
    criteria: Sequence[CriterionId],
    pairs: Sequence[ObservablePair],
    tol: Optional[float] = None,
    workers: int = 1,
    seed: Optional[int] = None,
) -> List[SweepRow]:
    """Evaluates criteria on every grid point of a parameter range.

    Rows come back in ascending parameter order; within a row, reports are ordered
    by criterion and then by observable pair, with PPT reported once. The order
    does not depend on ``workers``.

    Args:
        spec: State family and the parameters held fixed.
        param: Name of the swept parameter.
        param_range: Range with a step.
        criteria: Criteria to evaluate.
        pairs: Observable pairs, evaluated in the given order.
        tol: Verdict tolerance.
        workers: Number of threads evaluating grid points concurrently.
        seed: Seed for the random state families.

    Raises:
        InvalidRange: If the range has no step or there are no observable pairs.

    """
    if not pairs:
        raise InvalidRange("A sweep needs at least one observable pair.")
    grid = param_range.grid()
    ordered = _order(criteria)

    def point(value: float) -> SweepRow:
        return _sweep_point(spec, param, value, ordered, pairs, tol, seed)

    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "Sweeping %s over %d points with %d worker(s)", param, len(grid), workers
        )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(point, grid))
    return [point(value) for value in grid]


def _bisect(
    predicate: Callable[[float], bool],
    lo: float,
    hi: float,
    verdict_lo: bool,
    width: float,
) -> Tuple[Tuple[float, float], int]:
    """Shrinks [lo, hi] around a verdict change until it is at most ``width`` wide."""
    evaluations = 0
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= width:
            break
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        evaluations += 1
        if predicate(mid) == verdict_lo:
            lo = mid
        else:
            hi = mid
    return (lo, hi), evaluations


def cmd_threshold(
    spec: StateSpec,
    param: str,
    criterion: CriterionId,
    pair: ObservablePair,
    param_range: ParamRange,
    tol: Optional[float] = None,
    verdict_tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> ThresholdResult:
    """Finds the parameter value where a criterion's verdict changes.

    Bisects on the boolean verdict, not the margin, because the margin of the
    partial-transpose criterion is a sentinel when its left-hand side is not real.
    If ``param_range`` has a step, the grid is scanned first; every grid interval
    where the verdict changes is refined, and more than one change is logged as a
    warning.

    Args:
        spec: State family and the parameters held fixed.
        param: Name of the parameter to vary.
        criterion: Criterion whose verdict is bracketed.
        pair: Observables A and B.
        param_range: Search interval, optionally with a prescan step.
        tol: Target bracket width.
        verdict_tol: Tolerance passed to the criterion.
        seed: Seed for the random state families.

    Raises:
        NoSignChange: If no verdict change is found.

    """
    width = resolve_tol(tol)
    a, b = pair[0].matrix(), pair[1].matrix()

    def violated(value: float) -> bool:
        rho = spec.with_param(param, value).build(seed)
        return evaluate(criterion, rho, a, b, verdict_tol).violated

    if param_range.step is None:
        points: Tuple[float, ...] = (param_range.lo, param_range.hi)
    else:
        points = param_range.grid()
        if points[-1] < param_range.hi:
            points = points + (param_range.hi,)
    verdicts = [violated(value) for value in points]
    evaluations = len(points)

    brackets = [
        (points[k], points[k + 1], verdicts[k])
        for k in range(len(points) - 1)
        if verdicts[k] != verdicts[k + 1]
    ]
    if not brackets:
        raise NoSignChange(
            f"{criterion.value} reports "
            f"{'VIOLATED' if verdicts[0] else 'SATISFIED'} everywhere on "
            f"{param}={param_range.lo!r}..{param_range.hi!r}."
        )
    if len(brackets) > 1:
        logger.warning(
            "Verdict of %s changes %d times on %s; refining every bracket",
            criterion.value,
            len(brackets),
            param,
        )

    flips: List[Tuple[float, float]] = []
    for lo, hi, verdict_lo in brackets:
        bracket, count = _bisect(violated, lo, hi, verdict_lo, width)
        flips.append(bracket)
        evaluations += count
    lo, hi = flips[0]
    value = (lo + hi) / 2
    if math.isnan(value):
        raise NumericalFailure(f"Threshold search for {param} produced NaN.")
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "Threshold of %s in %s: %.12g after %d evaluations",
            criterion.value,
            param,
            value,
            evaluations,
        )
    return ThresholdResult(value, (lo, hi), tuple(flips), evaluations)
