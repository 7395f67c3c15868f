"""Character scanner for the small argument language of the command line."""

from typing import List, Tuple

import wywitness.tokens as tokens
from wywitness.keys import CHARACTER_TO_TOKEN

END = "\0"
BLANKS = "\n\t "
LITERAL_STOPS = END + BLANKS + "".join(CHARACTER_TO_TOKEN)


class Lexer:
    """Turns ``werner:p=0.5``, ``0:1:0.01`` or ``XY,YX`` into a token sequence.

    Every token records the offset it starts at, which is what a ``ParseError``
    reports back to the user.

    Attributes:
        text: Argument text with a trailing null character marking its end
        index: Offset of the next character to scan
        tokens: Tokens scanned so far

    """

    def __init__(self, text: str):
        self.text: str = text + END
        self.index: int = 0
        self.tokens: List[tokens.Token] = []

    def peek(self) -> str:
        """Returns the next character without moving past it."""
        return self.text[self.index]

    def advance(self, length: int = 1) -> None:
        """Skips ``length`` characters."""
        self.index += length

    def consume(self) -> str:
        """Returns the next character and moves past it."""
        ch = self.text[self.index]
        self.index += 1
        return ch

    def scan(self) -> Tuple[tokens.Token, ...]:
        """Scans the whole argument, bracketed by stream start and end tokens.

        Example:
            >>> Lexer("p=1").scan()[1:4]
            (LiteralToken(p), EqualsToken(), LiteralToken(1))

        """
        self.tokens.append(tokens.StreamStartToken(self.index))
        while self.peek() != END:
            ch = self.peek()
            if ch in BLANKS:
                token: tokens.Token = self.scan_whitespace()
            elif ch in CHARACTER_TO_TOKEN:
                token = CHARACTER_TO_TOKEN[ch](self.index)
                self.advance()
            else:
                token = self.scan_literal()
            self.tokens.append(token)
        self.tokens.append(tokens.StreamEndToken(self.index))
        return tuple(self.tokens)

    def scan_whitespace(self) -> tokens.WhitespaceToken:
        r"""Collects a run of blanks into one token.

        Example:
            >>> Lexer("\t p=1").scan_whitespace()
            WhitespaceToken('\t ')

        """
        start = self.index
        while self.peek() in BLANKS:
            self.advance()
        return tokens.WhitespaceToken(self.text[start : self.index], start)

    def scan_literal(self) -> tokens.LiteralToken:
        """Collects characters up to the next separator or blank.

        Signs, decimal points and exponents stay inside the literal, so numbers
        such as ``-1e-3`` come out whole.

        Example:
            >>> Lexer("0.75,").scan_literal()
            LiteralToken(0.75)

        """
        start = self.index
        while self.peek() not in LITERAL_STOPS:
            self.advance()
        return tokens.LiteralToken(self.text[start : self.index], start)
