import pytest

import wywitness.tokens as tokens
from wywitness.lexer import Lexer
from wywitness.tokens import LiteralToken, StreamStartToken, WhitespaceToken


@pytest.fixture
def lexer():
    text = "werner:p=0.5"
    return Lexer(text)


def test_peek_does_not_advance_index(lexer):
    index = lexer.index
    lexer.peek()
    assert lexer.index == index


def test_peek_returns_one_character(lexer):
    result = lexer.peek()
    assert len(result) == 1
    assert isinstance(result, str)


def test_advance_does_not_return_a_character(lexer):
    result = lexer.advance()
    assert result is None


def test_advance_increases_index_by_length(lexer):
    index = lexer.index
    lexer.advance()
    assert lexer.index == index + 1

    index = lexer.index
    lexer.advance(3)
    assert lexer.index == index + 3


def test_consume_advances_index_by_one(lexer):
    index = lexer.index
    lexer.consume()
    assert lexer.index == index + 1


def test_consume_returns_current_character(lexer):
    current_char = lexer.text[lexer.index]
    char = lexer.consume()
    assert char == current_char


params = [
    ("\0", tokens.StreamEndToken(0)),
    (":", tokens.ColonToken(0)),
    ("=", tokens.EqualsToken(0)),
    (",", tokens.CommaToken(0)),
]


@pytest.mark.parametrize("text,expected", params)
def test_scan_all_simple_tokens(text, expected):
    lexer = Lexer(text)
    result = lexer.scan()
    # Skip stream start token appended at the beginning
    assert result[1] == expected


def test_scan_with_empty_text_yields_start_and_end():
    result = Lexer("").scan()
    assert result == (tokens.StreamStartToken(0), tokens.StreamEndToken(0))


def test_scan_state_spec():
    result = Lexer("werner:p=0.5").scan()
    assert result == (
        StreamStartToken(0),
        LiteralToken("werner", 0),
        tokens.ColonToken(6),
        LiteralToken("p", 7),
        tokens.EqualsToken(8),
        LiteralToken("0.5", 9),
        tokens.StreamEndToken(12),
    )


def test_scan_records_character_positions():
    result = Lexer("XY, YX").scan()
    assert [token.position for token in result] == [0, 0, 2, 3, 4, 6]


def test_scan_range_with_step():
    result = Lexer("0:1:0.01").scan()
    literals = [t.value for t in result if isinstance(t, LiteralToken)]
    assert literals == ["0", "1", "0.01"]


def test_scan_whitespace():
    text = "\n\t p=1"
    output = Lexer(text).scan_whitespace()
    assert output == WhitespaceToken("\n\t ", 0)


def test_scan_literal_stops_at_punctuation():
    lexer = Lexer("0.75,p")
    output = lexer.scan_literal()
    assert output == LiteralToken("0.75", 0)
    assert lexer.peek() == ","


def test_scan_literal_keeps_minus_sign_and_exponent():
    output = Lexer("-1e-3:1").scan_literal()
    assert output == LiteralToken("-1e-3", 0)


def test_tokens__repr__():
    token = LiteralToken("werner_derivative", 0)
    assert repr(token) == "LiteralToken(werner_derivative)"
