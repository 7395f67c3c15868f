import math

import numpy as np
import pytest

from wywitness.criteria import (
    COMPUTED_CRITERIA,
    EVALUATORS,
    LITERATURE_THRESHOLDS,
    CriterionId,
    Diagnostic,
    Verdict,
    evaluate,
    evaluate_all,
    furuichi,
    heisenberg,
    luo_i,
    luo_u,
    ppt_check,
    proposed_pt_criterion,
    schrodinger_robertson,
    sr_on_pt,
    srpt,
)
from wywitness.exceptions import InvalidState
from wywitness.matcore import (
    DensityMatrix,
    partial_transpose,
    projector,
    random_density,
    random_separable,
)
from wywitness.states import ghz_w_mixture, max_mixed, pure_nonmax, werner
from wywitness.syntax import parse_observable

TOL = 1e-9


@pytest.fixture
def zi_iz():
    return parse_observable("ZI"), parse_observable("IZ")


@pytest.fixture
def xy_yx():
    return parse_observable("XY"), parse_observable("YX")


@pytest.fixture
def xx_yy():
    return parse_observable("XX"), parse_observable("YY")


@pytest.fixture
def zz_xx():
    return parse_observable("ZZ"), parse_observable("XX")


@pytest.mark.parametrize("p", [0.0, 0.1, 0.2, 0.3, 1 / 3])
def test_proposed_criterion_is_satisfied_on_werner_up_to_one_third(p, xy_yx):
    report = proposed_pt_criterion(werner(p), *xy_yx)
    assert report.verdict == Verdict.SATISFIED
    skew = (1 - p - math.sqrt((1 + p) * (1 - 3 * p))) / 2
    assert report.margin == pytest.approx(2 * skew * (1 - skew), abs=TOL)


@pytest.mark.parametrize("p", [0.34, 0.5, 0.75, 1.0])
def test_proposed_criterion_is_violated_on_werner_above_one_third(p, xy_yx):
    report = proposed_pt_criterion(werner(p), *xy_yx)
    assert report.verdict == Verdict.VIOLATED
    assert report.entangled
    assert report.margin == float("-inf")
    assert Diagnostic.NON_REAL_LHS in report.diagnostics
    assert report.min_pt_eigenvalue == pytest.approx((1 - 3 * p) / 4)


def test_proposed_criterion_branches_at_werner_one(zi_iz):
    report = proposed_pt_criterion(werner(1.0), *zi_iz)
    # U^2 = 1 - 2i for both observables, so w = ±(1 - 2i)
    values = sorted(report.branch_values, key=lambda z: z.real)
    assert values[0] == pytest.approx(-1 + 2j, abs=TOL)
    assert values[1] == pytest.approx(1 - 2j, abs=TOL)
    assert report.rhs == pytest.approx(1, abs=TOL)


def test_proposed_criterion_flags_observables_commuting_with_pt(zz_xx):
    report = proposed_pt_criterion(werner(0.8), *zz_xx)
    assert Diagnostic.INCONCLUSIVE_OBSERVABLES in report.diagnostics
    assert report.verdict == Verdict.SATISFIED
    assert report.lhs == pytest.approx(0, abs=TOL)
    assert report.rhs == pytest.approx(0, abs=TOL)


def test_proposed_criterion_detects_ghz_w_mixture(zi_iz):
    assert proposed_pt_criterion(ghz_w_mixture(0.75), *zi_iz).violated
    assert not proposed_pt_criterion(ghz_w_mixture(0.6), *zi_iz).violated


def test_proposed_criterion_does_not_need_a_valid_pt(xy_yx):
    # ρ itself must be a state, but the partial transpose may be indefinite
    report = proposed_pt_criterion(werner(0.9), *xy_yx)
    assert report.min_pt_eigenvalue < 0


def test_ppt_check_reports_min_eigenvalue():
    report = ppt_check(werner(0.5))
    assert report.verdict == Verdict.VIOLATED
    assert report.min_pt_eigenvalue == pytest.approx(-1 / 8)
    assert report.margin == pytest.approx(-1 / 8)


def test_ppt_check_on_maximally_mixed_state():
    report = ppt_check(max_mixed(4))
    assert report.verdict == Verdict.SATISFIED
    assert not report.entangled


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_sr_on_pt_with_local_observables_never_detects_werner(p, zi_iz):
    report = sr_on_pt(werner(p), *zi_iz)
    assert report.lhs == pytest.approx(1, abs=TOL)
    assert report.rhs == pytest.approx(p ** 2, abs=TOL)
    assert report.verdict == Verdict.SATISFIED


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 0.6, 1.0])
def test_srpt_on_werner_matches_closed_form(p, xx_yy):
    report = srpt(werner(p), *xx_yy)
    assert report.lhs == pytest.approx((1 - p ** 2) ** 2, abs=TOL)
    assert report.rhs == pytest.approx(p ** 2 * (1 + p) ** 2, abs=TOL)
    assert report.violated == (p > 0.5)
    assert report.route_gap <= 1e-10
    assert Diagnostic.ROUTES_DISAGREE not in report.diagnostics


def test_srpt_routes_agree_on_random_state():
    rho = random_density(4, seed=21)
    report = srpt(rho, parse_observable("XZ"), parse_observable("YI"))
    assert report.route_gap <= 1e-10


def test_sr_on_pt_detects_pure_non_maximal_state(zz_xx):
    report = sr_on_pt(pure_nonmax(0.6, 0.8), *zz_xx)
    assert report.lhs == pytest.approx(0, abs=TOL)
    assert report.rhs == pytest.approx(3.6864, abs=TOL)
    assert report.violated


def test_plain_sr_on_pure_non_maximal_state_is_tight(zz_xx):
    report = schrodinger_robertson(pure_nonmax(0.6, 0.8), *zz_xx)
    assert report.margin == pytest.approx(0, abs=TOL)
    assert report.verdict == Verdict.SATISFIED


def test_schrodinger_robertson_accepts_partial_transpose(zi_iz):
    pt = partial_transpose(werner(0.5))
    report = schrodinger_robertson(pt, *zi_iz)
    assert report.criterion == CriterionId.SR


@pytest.mark.parametrize("evaluator", [heisenberg, luo_i, luo_u, furuichi, srpt])
def test_relations_on_states_reject_partial_transposes(evaluator, zi_iz):
    with pytest.raises(InvalidState):
        evaluator(partial_transpose(werner(0.5)), *zi_iz)


def test_ppt_check_rejects_partial_transpose():
    with pytest.raises(InvalidState):
        ppt_check(partial_transpose(werner(0.5)))


@pytest.mark.parametrize("seed", range(10))
def test_uncertainty_relations_hold_on_random_states(seed, xy_yx):
    rho = random_density(4, seed=seed)
    for evaluator in (heisenberg, schrodinger_robertson, luo_u, furuichi):
        assert evaluator(rho, *xy_yx).verdict == Verdict.SATISFIED


def test_luo_i_report_carries_note(xy_yx):
    report = luo_i(werner(0.2), *xy_yx)
    assert report.note


def test_luo_i_is_tight_on_eigenstate():
    # I(ZI)I(XI) = 0 on |00>, while <[Z,X]> = 2i<Y> = 0 too, so the relation is tight
    rho = pure_nonmax(1.0, 0.0)
    report = luo_i(rho, parse_observable("ZI"), parse_observable("XI"))
    assert report.margin == pytest.approx(0, abs=TOL)


@pytest.mark.parametrize("seed", range(10))
def test_proposed_criterion_is_sound_on_separable_states(seed, zi_iz, xy_yx):
    rho = random_separable(2, 2, terms=4, seed=seed)
    assert not proposed_pt_criterion(rho, *zi_iz).violated
    assert not proposed_pt_criterion(rho, *xy_yx).violated


def test_tolerance_from_environment(monkeypatch, xx_yy):
    # Margin at p = 0.5 + 1e-7 is about -4.5e-7
    monkeypatch.setenv("WYWITNESS_TOL", "1e-6")
    assert not srpt(werner(0.5 + 1e-7), *xx_yy).violated
    monkeypatch.delenv("WYWITNESS_TOL")
    assert srpt(werner(0.5 + 1e-7), *xx_yy).violated


def test_evaluators_cover_computed_criteria():
    assert set(EVALUATORS) == set(COMPUTED_CRITERIA)


def test_evaluate_rejects_literature_rows(zi_iz):
    with pytest.raises(ValueError):
        evaluate(CriterionId.BELL_CHSH, werner(0.5), *zi_iz)


def test_evaluate_all_order_and_literature_rows(xy_yx):
    reports = evaluate_all(werner(0.5), *xy_yx)
    criteria = [report.criterion for report in reports]
    assert criteria == list(COMPUTED_CRITERIA) + [
        criterion for criterion, _, _ in LITERATURE_THRESHOLDS
    ]
    literature = reports[len(COMPUTED_CRITERIA) :]
    assert [report.rhs for report in literature] == pytest.approx(
        [1 / math.sqrt(2), 1 / math.sqrt(3), 0.5]
    )
    for report in literature:
        assert report.verdict == Verdict.NOT_COMPUTED
        assert np.isnan(report.margin)


def test_evaluate_all_on_maximally_mixed_state_is_satisfied(zi_iz):
    for report in evaluate_all(max_mixed(4), *zi_iz)[: len(COMPUTED_CRITERIA)]:
        assert report.verdict == Verdict.SATISFIED


@pytest.mark.parametrize("seed", range(10))
def test_luo_u_matches_heisenberg_on_pure_states(seed, xy_yx):
    rng = np.random.default_rng(seed)
    vector = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    rho = DensityMatrix.from_array(projector(vector / np.linalg.norm(vector)), (2, 2))
    for a, b in (xy_yx, (parse_observable("ZI"), parse_observable("XZ"))):
        u_report = luo_u(rho, a, b)
        v_report = heisenberg(rho, a, b)
        assert u_report.lhs == pytest.approx(v_report.lhs, abs=TOL)
        assert u_report.rhs == pytest.approx(v_report.rhs, abs=TOL)


@pytest.mark.parametrize("seed", range(10))
def test_luo_u_left_side_dominates_luo_i(seed, xy_yx, zi_iz):
    rho = random_density(4, seed=seed)
    for pair in (xy_yx, zi_iz):
        assert luo_u(rho, *pair).lhs.real >= luo_i(rho, *pair).lhs.real - TOL


def test_evaluate_all_on_werner_between_one_third_and_one_half(xy_yx, xx_yy):
    by_id = {report.criterion: report for report in evaluate_all(werner(0.4), *xy_yx)}
    assert by_id[CriterionId.PROPOSED_PT].verdict == Verdict.VIOLATED
    assert by_id[CriterionId.PPT].verdict == Verdict.VIOLATED
    by_id = {report.criterion: report for report in evaluate_all(werner(0.4), *xx_yy)}
    assert by_id[CriterionId.SRPT].verdict == Verdict.SATISFIED


def test_evaluate_all_on_ghz_w_mixture_above_threshold(zi_iz):
    reports = evaluate_all(ghz_w_mixture(0.75), *zi_iz)
    by_id = {report.criterion: report for report in reports}
    assert by_id[CriterionId.PROPOSED_PT].verdict == Verdict.VIOLATED
    assert by_id[CriterionId.SR_ON_PT].verdict == Verdict.SATISFIED
