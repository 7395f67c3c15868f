"""Parses lexed command-line arguments into state specs, ranges and observable pairs."""

import logging
from typing import Dict, List, Sequence, Tuple, Type

import wywitness.tokens as tokens
from wywitness.exceptions import ParseError
from wywitness.lexer import Lexer
from wywitness.states import FAMILY_PARAMS, StateFamily, StateSpec
from wywitness.syntax import ObservablePair, ParamRange, PauliString

# Delimiter character used during logging to show the grammar rule being tried
DELIMITER = ". "

logger = logging.getLogger(__name__)

FAMILIES: Dict[str, StateFamily] = {family.value: family for family in StateFamily}


class Parser:
    r"""Parses a sequence of tokens into one of the mini-language values.

    This parser is a recursive descent parser which uses the grammar listed below (in
    PEG format). Each grammar rule aligns with a corresponding method (e.g.
    parse_state). Whitespace between tokens is ignored.

    Grammar:
        * ``state`` ← ``family (":" param ("," param)*)?``
        * ``param`` ← ``literal "=" literal``
        * ``range`` ← ``literal ":" literal (":" literal)?``
        * ``pair`` ← ``literal "," literal``
        * ``family`` ← ``literal``
        * ``literal`` ← ``[^:,= ]+``

    Attributes:
        tokens: A sequence of tokens to be parsed.
        index: The position in the token sequence being parsed.
        log_debug: A flag indicating that debug messages should be logged.

    """

    def __init__(self, stream: Sequence[tokens.Token]):
        """Initializes the Parser with a stream of tokens and sets the index.

        Args:
            stream: Lexed sequence of tokens to be parsed

        Raises:
            TypeError: If an object in the stream is not a valid token

        """
        for token in stream:
            if not isinstance(token, tokens.Token):
                raise TypeError(
                    f"Type {type(token)} for {token} is not a valid token type."
                )
        self.tokens = stream
        self.index: int = 0
        self.log_debug: bool = logger.isEnabledFor(logging.DEBUG)

    def peek(self) -> tokens.Token:
        """Returns the token at the current index, skipping whitespace."""
        while isinstance(self.tokens[self.index], tokens.WhitespaceToken):
            self.index += 1
        return self.tokens[self.index]

    def consume(self) -> tokens.Token:
        """Returns the current token and advances the index by 1 token."""
        token = self.peek()
        self.index += 1
        return token

    def check(self, *token_types: Type[tokens.Token]) -> bool:
        """Returns True if the current token matches one of the token_types."""
        if self.log_debug:
            logger.debug(
                "%sCheck %s == %s",
                DELIMITER,
                self.peek(),
                " or ".join(t.__name__ for t in token_types),
            )
        return type(self.peek()) in token_types

    def expect(self, token_type: Type[tokens.Token], what: str) -> tokens.Token:
        """Consumes a token of the given type or raises a ParseError naming it."""
        if not self.check(token_type):
            token = self.peek()
            found = getattr(token, "value", token.id)
            raise ParseError(f"Expected {what}, found '{found}'", token.position)
        return self.consume()

    def start(self) -> None:
        if self.check(tokens.StreamStartToken):
            self.consume()

    def finish(self) -> None:
        self.expect(tokens.StreamEndToken, "end of input")

    def parse_literal(self, what: str) -> tokens.LiteralToken:
        token = self.expect(tokens.LiteralToken, what)
        assert isinstance(token, tokens.LiteralToken)
        return token

    def parse_number(self, what: str) -> float:
        token = self.parse_literal(what)
        try:
            return float(token.value)
        except ValueError:
            raise ParseError(
                f"Expected a number for {what}, found '{token.value}'", token.position
            ) from None

    def parse_state(self) -> StateSpec:
        """Returns the state spec described by the token stream.

        Grammar: ``state`` ← ``family (":" param ("," param)*)?``

        Raises:
            ParseError: If the family or a parameter key is unknown, a key is
                repeated, or the text does not match the grammar.

        """
        if self.log_debug:
            logger.debug("%sTry to parse [state] = family (':' params)?", DELIMITER)
        self.start()
        name = self.parse_literal("a state family")
        try:
            family = FAMILIES[name.value]
        except KeyError:
            raise ParseError(
                f"Unknown state family '{name.value}', expected one of "
                f"{', '.join(FAMILIES)}",
                name.position,
            ) from None

        params: List[Tuple[str, str]] = []
        if self.check(tokens.ColonToken):
            self.consume()
            params.append(self.parse_param(family, params))
            while self.check(tokens.CommaToken):
                self.consume()
                params.append(self.parse_param(family, params))
        self.finish()
        spec = StateSpec(family, tuple(params))
        if self.log_debug:
            logger.debug("%sSuccessfully parsed state %s.", DELIMITER, spec)
        return spec

    def parse_param(
        self, family: StateFamily, seen: Sequence[Tuple[str, str]]
    ) -> Tuple[str, str]:
        """Returns a key/value pair valid for ``family``.

        Grammar: ``param`` ← ``literal "=" literal``

        """
        key = self.parse_literal("a parameter name")
        if key.value not in FAMILY_PARAMS[family]:
            raise ParseError(
                f"Unknown parameter '{key.value}' for family '{family.value}', "
                f"expected one of {', '.join(FAMILY_PARAMS[family])}",
                key.position,
            )
        if any(existing == key.value for existing, _ in seen):
            raise ParseError(f"Parameter '{key.value}' is repeated", key.position)
        self.expect(tokens.EqualsToken, "'='")
        value = self.parse_literal(f"a value for '{key.value}'")
        return key.value, value.value

    def parse_range(self) -> ParamRange:
        """Returns the range described by the token stream.

        Grammar: ``range`` ← ``literal ":" literal (":" literal)?``

        Raises:
            ParseError: If the text does not match the grammar.
            InvalidRange: If the range is empty or the step is not positive.

        """
        if self.log_debug:
            logger.debug("%sTry to parse [range] = lo ':' hi (':' step)?", DELIMITER)
        self.start()
        lo = self.parse_number("the range start")
        self.expect(tokens.ColonToken, "':'")
        hi = self.parse_number("the range end")
        step = None
        if self.check(tokens.ColonToken):
            self.consume()
            step = self.parse_number("the range step")
        self.finish()
        return ParamRange(lo, hi, step)

    def parse_pair(self) -> ObservablePair:
        """Returns the two Pauli strings of an observable pair.

        Grammar: ``pair`` ← ``literal "," literal``

        Raises:
            ParseError: If the text does not match the grammar or either
                observable is not a two-qubit Pauli string.

        """
        if self.log_debug:
            logger.debug("%sTry to parse [pair] = literal ',' literal", DELIMITER)
        self.start()
        first = self.parse_literal("an observable")
        self.expect(tokens.CommaToken, "','")
        second = self.parse_literal("a second observable")
        self.finish()
        return (
            PauliString.parse(first.value, first.position),
            PauliString.parse(second.value, second.position),
        )


def parse_state(text: str) -> StateSpec:
    """Parses ``family:key=value,...`` into a StateSpec.

    Examples:
        >>> parse_state("werner:p=0.5")
        StateSpec(family=<StateFamily.WERNER: 'werner'>, params=(('p', '0.5'),))

    """
    return Parser(Lexer(text).scan()).parse_state()


def parse_range(text: str) -> ParamRange:
    """Parses ``lo:hi`` or ``lo:hi:step`` into a ParamRange."""
    return Parser(Lexer(text).scan()).parse_range()


def parse_pair(text: str) -> ObservablePair:
    """Parses ``A,B`` into a pair of Pauli strings."""
    return Parser(Lexer(text).scan()).parse_pair()
