import json
import logging
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

import wywitness
from wywitness.criteria import CriterionId
from wywitness.exceptions import ParseError


@pytest.fixture
def state_path():
    path = Path(__file__).parent / "resources" / "werner_p05.json"
    return str(path)


def test_debug_flag_is_parsed_to_log_level_debug():
    args = wywitness.parse_args(["eval", "--state", "werner:p=0.5", "-v"])
    assert args.log_level == logging.DEBUG
    args = wywitness.parse_args(["eval", "--state", "werner:p=0.5", "--verbose"])
    assert args.log_level == logging.DEBUG


def test_absence_of_debug_flag_is_parsed_to_log_level_warn():
    args = wywitness.parse_args(["eval", "--state", "werner:p=0.5"])
    assert args.log_level == logging.WARN


def test_default_formats_per_command(state_path):
    assert wywitness.parse_args(["eval", "--state", "werner"]).format == "table"
    assert wywitness.parse_args(["sweep", "--state", "werner"]).format == "csv"
    assert wywitness.parse_args(["check", state_path]).format == "table"


def test_threshold_defaults_to_proposed_criterion():
    args = wywitness.parse_args(["threshold", "--state", "werner"])
    assert args.criterion == "proposed"


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--state", "werner:p=0.5"],
        ["sweep", "--state", "werner"],
        ["check", "state.json"],
    ],
)
def test_criterion_defaults_to_all(args):
    assert wywitness.parse_args(args).criterion == "all"


def test_threshold_default_does_not_leak_into_eval():
    wywitness.parse_args(["threshold", "--state", "werner"])
    assert wywitness.parse_args(["eval", "--state", "werner"]).criterion == "all"
    assert wywitness.parse_args(["sweep", "--state", "werner"]).criterion == "all"


def test_main_eval_without_criterion_reports_every_criterion(capsys):
    code = wywitness.main(["eval", "--state", "werner:p=0.5", "--format", "json"])
    assert code == wywitness.EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    names = [report["criterion"] for report in reports]
    assert names[0] == "heisenberg"
    assert "ppt" in names
    assert names[-3:] == ["bell-chsh", "guhne-lur", "srpt-local"]


def test_obs_can_be_repeated():
    args = wywitness.parse_args(
        ["sweep", "--state", "werner", "--obs", "XY,YX", "--obs", "ZI,IZ"]
    )
    assert args.obs == ["XY,YX", "ZI,IZ"]


def test_missing_subcommand_exits():
    with pytest.raises(SystemExit):
        wywitness.parse_args([])


def test_parse_criteria():
    assert wywitness.parse_criteria("all") is None
    assert wywitness.parse_criteria("proposed,ppt") == [
        CriterionId.PROPOSED_PT,
        CriterionId.PPT,
    ]


def test_parse_criteria_with_unknown_name_raises_at_name():
    with pytest.raises(ParseError) as excinfo:
        wywitness.parse_criteria("ppt,bell-chsh")
    assert excinfo.value.position == 4


def test_main_eval_prints_table(capsys):
    code = wywitness.main(["eval", "--state", "werner:p=0.5"])
    assert code == wywitness.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("criterion")
    assert "proposed" in out
    assert "NOT_COMPUTED" in out


def test_main_eval_json_with_selected_criteria(capsys):
    code = wywitness.main(
        ["eval", "--state", "werner:p=0.5", "--criterion", "ppt", "--format", "json"]
    )
    assert code == wywitness.EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert [report["criterion"] for report in reports] == ["ppt"]
    assert reports[0]["margin"] == pytest.approx(-0.125)


def test_main_writes_output_file(tmp_path):
    out = tmp_path / "reports.csv"
    code = wywitness.main(
        ["eval", "--state", "max_mixed", "--format", "csv", "--out", str(out)]
    )
    assert code == wywitness.EXIT_OK
    assert out.read_text().startswith("criterion,lhs_re,lhs_im")


def test_main_check(state_path, capsys):
    code = wywitness.main(["check", state_path, "--criterion", "ppt"])
    assert code == wywitness.EXIT_OK
    assert "VIOLATED" in capsys.readouterr().out


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--state", "wernr:p=0.5"],
        ["eval", "--state", "werner:p=1.5"],
        ["eval", "--state", "werner:p=0.5", "--obs", "XQ,YX"],
        ["eval", "--state", "werner:p=0.5", "--criterion", "nope"],
        ["check", str(Path(__file__).parent / "resources" / "bad_trace.json")],
        ["check", "no_such_file.json"],
        ["sweep", "--state", "werner", "--range", "1:0:0.1"],
        ["threshold", "--state", "werner", "--criterion", "all"],
        ["threshold", "--state", "werner", "--criterion", "sr-pt", "--obs", "ZI,IZ"],
        ["eval", "--state", "werner:p=0.5", "--tol", "-1"],
    ],
)
def test_main_input_errors_exit_with_two(args, caplog):
    with caplog.at_level(logging.ERROR):
        assert wywitness.main(args) == wywitness.EXIT_INPUT_ERROR
    assert caplog.records


@patch("wywitness.cmd_eval")
def test_main_numerical_failure_exits_with_three(mock_cmd_eval):
    mock_cmd_eval.side_effect = np.linalg.LinAlgError("eigh did not converge")
    assert wywitness.main(["eval", "--state", "werner:p=0.5"]) == 3


@patch("wywitness.main")
def test_run_cli(mock_main):
    mock_main.return_value = wywitness.EXIT_OK
    with patch("sys.argv", ["wywitness", "eval", "--state", "werner:p=0.5"]):
        with pytest.raises(SystemExit) as excinfo:
            wywitness.cli()
    assert excinfo.value.code == 0
    mock_main.assert_called_once_with(["eval", "--state", "werner:p=0.5"])


def test_load_with_bad_argument_raises_type_error():
    with pytest.raises(TypeError):
        wywitness.load(stream=100)
