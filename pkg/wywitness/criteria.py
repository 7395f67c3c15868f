"""Uncertainty relations and entanglement criteria evaluated against a state.

Each evaluator returns a ``CriterionReport``. A report is VIOLATED when its margin
(left-hand side minus right-hand side) is below ``-tol``. For the partial-transpose
criteria a violation certifies entanglement; for the plain uncertainty relations
on a valid state a violation would contradict the relation.

"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from wywitness.matcore import (
    DensityMatrix,
    Observable,
    commutes,
    partial_transpose,
    partial_transpose_matrix,
)
from wywitness.utils import RECONSTRUCTION_TOL, resolve_tol
from wywitness.wyquant import (
    expectation,
    fluctuation_operator,
    skew_information,
    u_quantity_squared,
    variance,
    wy_correlation,
)

logger = logging.getLogger(__name__)

NOT_REAL = float("-inf")


class CriterionId(Enum):
    HEISENBERG = "heisenberg"
    SR = "sr"
    LUO_I = "luo-i"
    LUO_U = "luo-u"
    FURUICHI = "furuichi"
    PROPOSED_PT = "proposed"
    SR_ON_PT = "sr-pt"
    SRPT = "srpt"
    PPT = "ppt"
    # Literature reference rows, never computed
    BELL_CHSH = "bell-chsh"
    GUHNE_LUR = "guhne-lur"
    SRPT_LOCAL = "srpt-local"


COMPUTED_CRITERIA: Tuple[CriterionId, ...] = tuple(CriterionId)[:9]

# A violation of these certifies entanglement
PARTIAL_TRANSPOSE_CRITERIA: Tuple[CriterionId, ...] = (
    CriterionId.PROPOSED_PT,
    CriterionId.SR_ON_PT,
    CriterionId.SRPT,
    CriterionId.PPT,
)


class Verdict(Enum):
    SATISFIED = "SATISFIED"
    VIOLATED = "VIOLATED"
    NOT_COMPUTED = "NOT_COMPUTED"


class Diagnostic(Enum):
    INCONCLUSIVE_OBSERVABLES = "INCONCLUSIVE_OBSERVABLES"
    NON_REAL_LHS = "NON_REAL_LHS"
    ROUTES_DISAGREE = "ROUTES_DISAGREE"


# Werner-state thresholds reported in the literature for competing criteria
LITERATURE_THRESHOLDS: Tuple[Tuple[CriterionId, float, str], ...] = (
    (
        CriterionId.BELL_CHSH,
        1 / math.sqrt(2),
        "Bell-CHSH violation for p > 1/sqrt(2)",
    ),
    (
        CriterionId.GUHNE_LUR,
        1 / math.sqrt(3),
        "local uncertainty relations for p > 1/sqrt(3)",
    ),
    (CriterionId.SRPT_LOCAL, 0.5, "SRPT with local observables for p > 1/2"),
)

LUO_I_NOTE = (
    "I(A)I(B) >= |<[A,B]>|^2/4 fails whenever the skew information vanishes for "
    "non-commuting observables; reported for comparison only."
)


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of evaluating one criterion on one state.

    Attributes:
        criterion: Which relation was evaluated.
        lhs: Left-hand side, or the chosen branch value for PROPOSED_PT.
        rhs: Right-hand side.
        margin: Real part of lhs minus rhs; -inf when no branch is real.
        verdict: SATISFIED, VIOLATED, or NOT_COMPUTED for literature rows.
        branch_values: Square-root branch values considered (PROPOSED_PT only).
        min_pt_eigenvalue: Smallest eigenvalue of the partial transpose, if computed.
        diagnostics: Flags raised during evaluation.
        note: Free-text remark attached to the report.
        route_gap: Disagreement between the two SRPT evaluation routes.

    """

    criterion: CriterionId
    lhs: complex
    rhs: float
    margin: float
    verdict: Verdict
    branch_values: Tuple[complex, ...] = ()
    min_pt_eigenvalue: Optional[float] = None
    diagnostics: Tuple[Diagnostic, ...] = ()
    note: str = ""
    route_gap: Optional[float] = None

    @property
    def violated(self) -> bool:
        return self.verdict == Verdict.VIOLATED

    @property
    def entangled(self) -> bool:
        """True if this report certifies entanglement of the evaluated state."""
        return self.violated and self.criterion in PARTIAL_TRANSPOSE_CRITERIA


Evaluator = Callable[..., CriterionReport]


def _verdict(margin: float, tol: float) -> Verdict:
    return Verdict.VIOLATED if margin < -tol else Verdict.SATISFIED


def _report(
    criterion: CriterionId, lhs: complex, rhs: float, tol: float, **extra
) -> CriterionReport:
    margin = complex(lhs).real - rhs
    report = CriterionReport(
        criterion=criterion,
        lhs=complex(lhs),
        rhs=float(rhs),
        margin=float(margin),
        verdict=_verdict(margin, tol),
        **extra,
    )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "%s: lhs=%s rhs=%.12g -> %s",
            criterion.name,
            report.lhs,
            report.rhs,
            report.verdict.value,
        )
    return report


def _commutator_mean(rho: DensityMatrix, a: Observable, b: Observable) -> complex:
    return expectation(rho, a @ b - b @ a)


def _real_sqrt(value: complex) -> float:
    """Principal square root of a quantity that is real for valid states."""
    return complex(np.sqrt(complex(value))).real


def heisenberg(
    rho: DensityMatrix, a: Observable, b: Observable, tol: Optional[float] = None
) -> CriterionReport:
    """Evaluates V(ρ,A)V(ρ,B) >= ¼|Tr(ρ[A,B])|².

    Raises:
        InvalidState: If ``rho`` is not a valid state.

    """
    tol = resolve_tol(tol)
    rho.require_valid("The Heisenberg relation")
    lhs = variance(rho, a) * variance(rho, b)
    rhs = abs(_commutator_mean(rho, a, b)) ** 2 / 4
    return _report(CriterionId.HEISENBERG, lhs, rhs, tol)


def _schrodinger_robertson(
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    tol: float,
    criterion: CriterionId,
    **extra,
) -> CriterionReport:
    a0 = fluctuation_operator(rho, a)
    b0 = fluctuation_operator(rho, b)
    lhs = variance(rho, a) * variance(rho, b)
    commutator = _commutator_mean(rho, a, b)
    anticommutator = expectation(rho, a0 @ b0 + b0 @ a0)
    rhs = abs(commutator) ** 2 / 4 + abs(anticommutator) ** 2 / 4
    return _report(criterion, lhs, rhs, tol, **extra)


def schrodinger_robertson(
    rho: DensityMatrix, a: Observable, b: Observable, tol: Optional[float] = None
) -> CriterionReport:
    """Evaluates V(A)V(B) >= ¼|⟨[A,B]⟩|² + ¼|⟨{A₀,B₀}⟩|².

    ``rho`` only needs to be Hermitian with unit trace, so the relation can be
    evaluated on a partial transpose.

    """
    return _schrodinger_robertson(rho, a, b, resolve_tol(tol), CriterionId.SR)


def sr_on_pt(
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    tol: Optional[float] = None,
    subsystem: str = "B",
) -> CriterionReport:
    """Evaluates the Schrödinger-Robertson relation on the partial transpose of ρ."""
    pt = partial_transpose(rho, subsystem)
    return _schrodinger_robertson(
        pt,
        a,
        b,
        resolve_tol(tol),
        CriterionId.SR_ON_PT,
        min_pt_eigenvalue=pt.min_eigenvalue,
    )


def _srpt_observable_route(
    rho: DensityMatrix, a: Observable, b: Observable, subsystem: str
) -> Tuple[complex, float]:
    """Evaluates the SRPT inequality with the transpose moved onto the observables."""

    def mean(x: np.ndarray) -> complex:
        return expectation(rho, partial_transpose_matrix(x, rho.dims, subsystem))

    mean_a, mean_b = mean(a), mean(b)
    var_a = mean(a @ a) - mean_a ** 2
    var_b = mean(b @ b) - mean_b ** 2
    commutator = mean(a @ b - b @ a)
    anticommutator = mean(a @ b + b @ a) - 2 * mean_a * mean_b
    rhs = abs(commutator) ** 2 / 4 + abs(anticommutator) ** 2 / 4
    return var_a * var_b, rhs


def srpt(
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    tol: Optional[float] = None,
    subsystem: str = "B",
) -> CriterionReport:
    """Evaluates the Schrödinger-Robertson partial-transpose (SRPT) inequality.

    The report is computed as the Schrödinger-Robertson relation on ρ^PT. The same
    inequality is also evaluated with the partial transpose applied to the
    observables (⟨X⟩ → Tr(ρ X^PT)); the larger disagreement of the two routes is
    stored in ``route_gap``.

    Raises:
        InvalidState: If ``rho`` is not a valid state.

    """
    tol = resolve_tol(tol)
    rho.require_valid("The SRPT inequality")
    a = rho.require_observable(a)
    b = rho.require_observable(b)
    pt = partial_transpose(rho, subsystem)
    lhs_obs, rhs_obs = _srpt_observable_route(rho, a, b, subsystem)
    direct = _schrodinger_robertson(pt, a, b, tol, CriterionId.SRPT)
    gap = max(abs(direct.lhs - lhs_obs), abs(direct.rhs - rhs_obs))
    diagnostics: Tuple[Diagnostic, ...] = ()
    if gap > RECONSTRUCTION_TOL:
        logger.warning("SRPT evaluation routes disagree by %.3g", gap)
        diagnostics = (Diagnostic.ROUTES_DISAGREE,)
    return _report(
        CriterionId.SRPT,
        direct.lhs,
        direct.rhs,
        tol,
        min_pt_eigenvalue=pt.min_eigenvalue,
        diagnostics=diagnostics,
        route_gap=float(gap),
    )


def luo_i(
    rho: DensityMatrix, a: Observable, b: Observable, tol: Optional[float] = None
) -> CriterionReport:
    """Evaluates I(ρ,A)I(ρ,B) >= ¼|Tr(ρ[A,B])|².

    Raises:
        InvalidState: If ``rho`` is not a valid state.

    """
    tol = resolve_tol(tol)
    rho.require_valid("Luo's skew-information relation")
    lhs = skew_information(rho, a).real * skew_information(rho, b).real
    rhs = abs(_commutator_mean(rho, a, b)) ** 2 / 4
    return _report(CriterionId.LUO_I, lhs, rhs, tol, note=LUO_I_NOTE)


def luo_u(
    rho: DensityMatrix, a: Observable, b: Observable, tol: Optional[float] = None
) -> CriterionReport:
    """Evaluates U(ρ,A)U(ρ,B) >= ¼|Tr(ρ[A,B])|².

    Raises:
        InvalidState: If ``rho`` is not a valid state.

    """
    tol = resolve_tol(tol)
    rho.require_valid("Luo's U-quantity relation")
    lhs = _real_sqrt(u_quantity_squared(rho, a)) * _real_sqrt(
        u_quantity_squared(rho, b)
    )
    rhs = abs(_commutator_mean(rho, a, b)) ** 2 / 4
    return _report(CriterionId.LUO_U, lhs, rhs, tol)


def furuichi(
    rho: DensityMatrix, a: Observable, b: Observable, tol: Optional[float] = None
) -> CriterionReport:
    """Evaluates U(ρ,A)U(ρ,B) >= |C_ρ(A,B)|² with the Wigner-Yanase correlation.

    Raises:
        InvalidState: If ``rho`` is not a valid state.

    """
    tol = resolve_tol(tol)
    rho.require_valid("The Schrödinger-type skew-information relation")
    lhs = _real_sqrt(u_quantity_squared(rho, a)) * _real_sqrt(
        u_quantity_squared(rho, b)
    )
    rhs = abs(wy_correlation(rho, a, b)) ** 2
    return _report(CriterionId.FURUICHI, lhs, rhs, tol)


def proposed_pt_criterion(
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    tol: Optional[float] = None,
    subsystem: str = "B",
) -> CriterionReport:
    """Evaluates U(ρ^PT,A)U(ρ^PT,B) >= |C_ρ^PT(A,B)|².

    The left-hand side is a product of two square roots. Choosing the branch of
    each root independently yields the two values ±w, w = √(U²(A)·U²(B)). The
    inequality is satisfiable only by a real branch value, so the verdict is
    SATISFIED iff some z in {w, -w} has |Im z| <= tol and Re z >= rhs - tol.
    A violation certifies entanglement.

    Args:
        rho: Bipartite state.
        a: First observable on the joint space.
        b: Second observable on the joint space.
        tol: Verdict tolerance.
        subsystem: Factor over which the partial transpose is taken.

    """
    tol = resolve_tol(tol)
    a = rho.require_observable(a)
    b = rho.require_observable(b)
    pt = partial_transpose(rho, subsystem)
    u2a = u_quantity_squared(pt, a)
    u2b = u_quantity_squared(pt, b)
    w = complex(np.sqrt(complex(u2a * u2b)))
    branches = (w, -w)
    rhs = abs(wy_correlation(pt, a, b)) ** 2

    diagnostics: List[Diagnostic] = []
    real_branches = [z for z in branches if abs(z.imag) <= tol]
    if real_branches:
        lhs = max(real_branches, key=lambda z: z.real)
        margin = lhs.real - rhs
    else:
        lhs, margin = w, NOT_REAL
        diagnostics.append(Diagnostic.NON_REAL_LHS)
    if commutes(pt.matrix, a, tol) and commutes(pt.matrix, b, tol):
        diagnostics.append(Diagnostic.INCONCLUSIVE_OBSERVABLES)

    report = CriterionReport(
        criterion=CriterionId.PROPOSED_PT,
        lhs=lhs,
        rhs=float(rhs),
        margin=float(margin),
        verdict=_verdict(margin, tol),
        branch_values=branches,
        min_pt_eigenvalue=pt.min_eigenvalue,
        diagnostics=tuple(diagnostics),
    )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "PROPOSED_PT: U2(A)=%s U2(B)=%s branches=%s rhs=%.12g -> %s",
            u2a,
            u2b,
            branches,
            rhs,
            report.verdict.value,
        )
    return report


def ppt_check(
    rho: DensityMatrix,
    a: Optional[Observable] = None,
    b: Optional[Observable] = None,
    tol: Optional[float] = None,
    subsystem: str = "B",
) -> CriterionReport:
    """Evaluates the Peres criterion: VIOLATED (entangled) iff min eig(ρ^PT) < -tol.

    The observables are accepted for a uniform evaluator signature and ignored.

    Raises:
        InvalidState: If ``rho`` is not a valid state.

    """
    tol = resolve_tol(tol)
    rho.require_valid("The PPT criterion")
    min_eigenvalue = partial_transpose(rho, subsystem).min_eigenvalue
    return _report(
        CriterionId.PPT, min_eigenvalue, 0.0, tol, min_pt_eigenvalue=min_eigenvalue
    )


EVALUATORS: Dict[CriterionId, Evaluator] = {
    CriterionId.HEISENBERG: heisenberg,
    CriterionId.SR: schrodinger_robertson,
    CriterionId.LUO_I: luo_i,
    CriterionId.LUO_U: luo_u,
    CriterionId.FURUICHI: furuichi,
    CriterionId.PROPOSED_PT: proposed_pt_criterion,
    CriterionId.SR_ON_PT: sr_on_pt,
    CriterionId.SRPT: srpt,
    CriterionId.PPT: ppt_check,
}


def evaluate(
    criterion: CriterionId,
    rho: DensityMatrix,
    a: Observable,
    b: Observable,
    tol: Optional[float] = None,
) -> CriterionReport:
    """Runs a single evaluator by id."""
    try:
        evaluator = EVALUATORS[criterion]
    except KeyError:
        raise ValueError(
            f"{criterion.name} is a literature row and cannot be evaluated."
        ) from None
    return evaluator(rho, a, b, tol=tol)


def literature_reports() -> List[CriterionReport]:
    """Returns the literature Werner thresholds as NOT_COMPUTED report rows."""
    nan = float("nan")
    return [
        CriterionReport(
            criterion=criterion,
            lhs=complex(nan, nan),
            rhs=threshold,
            margin=nan,
            verdict=Verdict.NOT_COMPUTED,
            note=note,
        )
        for criterion, threshold, note in LITERATURE_THRESHOLDS
    ]


def evaluate_all(
    rho: DensityMatrix, a: Observable, b: Observable, tol: Optional[float] = None
) -> List[CriterionReport]:
    """Runs every computed criterion, then appends the literature reference rows."""
    reports = [evaluate(criterion, rho, a, b, tol) for criterion in COMPUTED_CRITERIA]
    return reports + literature_reports()
