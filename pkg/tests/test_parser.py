import pytest

import wywitness.tokens as tokens
from wywitness.exceptions import InvalidRange, ParseError
from wywitness.parser import Parser, parse_pair, parse_range, parse_state
from wywitness.states import StateFamily, StateSpec
from wywitness.syntax import ParamRange, PauliString


@pytest.fixture
def parser():
    stream = (
        tokens.StreamStartToken(0),
        tokens.LiteralToken("werner", 0),
        tokens.ColonToken(6),
        tokens.LiteralToken("p", 7),
        tokens.EqualsToken(8),
        tokens.LiteralToken("0.5", 9),
        tokens.StreamEndToken(12),
    )
    return Parser(stream)


def test_init_parser_index_starts_at_zero(parser):
    assert parser.index == 0


def test_init_parser_has_tokens(parser):
    assert len(parser.tokens) > 0


def test_init_all_tokens_must_be_tokens():
    with pytest.raises(TypeError):
        Parser(("a", "b", "c", "d", 1, 2, 3, 4))


def test_peek_does_not_advance_index(parser):
    index = parser.index
    parser.peek()
    assert parser.index == index


def test_peek_skips_whitespace():
    stream = (
        tokens.WhitespaceToken("  ", 0),
        tokens.LiteralToken("XY", 2),
        tokens.StreamEndToken(4),
    )
    parser = Parser(stream)
    assert parser.peek() == tokens.LiteralToken("XY", 2)


def test_consume_advances_index_by_one(parser):
    index = parser.index
    parser.consume()
    assert parser.index == index + 1


def test_consume_returns_current_token(parser):
    current_token = parser.tokens[parser.index]
    token = parser.consume()
    assert token == current_token


def test_check_returns_true_for_single_valid_type(parser):
    assert parser.check(tokens.StreamStartToken)


def test_check_returns_false_for_single_invalid_type(parser):
    assert not parser.check(tokens.ColonToken)


def test_check_returns_true_for_mix_of_valid_and_invalid_types(parser):
    assert parser.check(tokens.ColonToken, tokens.StreamStartToken)


def test_expect_raises_parse_error_with_position(parser):
    parser.consume()
    parser.consume()
    with pytest.raises(ParseError) as excinfo:
        parser.expect(tokens.EqualsToken, "'='")
    assert excinfo.value.position == 6


def test_parse_state_from_token_stream(parser):
    result = parser.parse_state()
    assert result == StateSpec(StateFamily.WERNER, (("p", "0.5"),))


def test_parse_state_with_several_parameters():
    result = parse_state("werner_derivative:a=0.75,p=0.6")
    assert result.family == StateFamily.WERNER_DERIVATIVE
    assert result.param_dict == {"a": "0.75", "p": "0.6"}


def test_parse_state_without_parameters():
    assert parse_state("max_mixed") == StateSpec(StateFamily.MAX_MIXED)


def test_parse_state_ignores_whitespace():
    assert parse_state(" werner : p = 0.5 ") == parse_state("werner:p=0.5")


def test_parse_state_with_unknown_family_raises_at_family():
    with pytest.raises(ParseError) as excinfo:
        parse_state("wernr:p=0.5")
    assert excinfo.value.position == 0


def test_parse_state_with_unknown_key_raises_at_key():
    with pytest.raises(ParseError) as excinfo:
        parse_state("werner:q=0.5")
    assert excinfo.value.position == 7


def test_parse_state_with_repeated_key_raises():
    with pytest.raises(ParseError) as excinfo:
        parse_state("werner:p=0.5,p=0.6")
    assert excinfo.value.position == 13


def test_parse_state_with_missing_value_raises():
    with pytest.raises(ParseError) as excinfo:
        parse_state("werner:p=")
    assert excinfo.value.position == 9


def test_parse_state_with_trailing_tokens_raises():
    with pytest.raises(ParseError):
        parse_state("werner:p=0.5:1")


def test_parse_range_with_and_without_step():
    assert parse_range("0:1") == ParamRange(0.0, 1.0)
    assert parse_range("0.5:1:0.005") == ParamRange(0.5, 1.0, 0.005)


def test_parse_range_with_non_numeric_bound_raises_at_bound():
    with pytest.raises(ParseError) as excinfo:
        parse_range("0:one")
    assert excinfo.value.position == 2


@pytest.mark.parametrize("text", ["1:0", "0:1:0", "0:1:-0.1", "0.5:0.5"])
def test_parse_range_with_empty_range_or_bad_step_raises(text):
    with pytest.raises(InvalidRange):
        parse_range(text)


def test_parse_pair():
    assert parse_pair("XY,YX") == (PauliString("XY"), PauliString("YX"))


@pytest.mark.parametrize(
    "text,position", [("XQ,YX", 1), ("XY,YXZ", 5), ("X,YX", 1), ("XY", 2)]
)
def test_parse_pair_reports_offending_position(text, position):
    with pytest.raises(ParseError) as excinfo:
        parse_pair(text)
    assert excinfo.value.position == position


def test_parse_pair_lowercase_is_rejected():
    with pytest.raises(ParseError) as excinfo:
        parse_pair("xy,YX")
    assert excinfo.value.position == 0
