"""Token types produced when lexing state descriptions, ranges and observable pairs."""


class Token:
    """A piece of an argument string, anchored at the character where it starts.

    Tokens without content compare equal whenever their types match, so a parser
    can ask ``token == ColonToken(0)`` without knowing where the colon sits.
    """

    id: str = "<base token>"
    value: str

    def __init__(self, position: int):
        self.position: int = position

    def __eq__(self, other):
        return type(self) is type(other)

    def __repr__(self):
        """Shows the class name and, for content tokens, the stripped content.

        Examples:
            >>> Token(3)
            Token()

            >>> LiteralToken("werner_derivative", 0)
            LiteralToken(werner_derivative)

        """
        content = getattr(self, "value", "").strip()
        if len(content) > 25:
            content = content[:25].rstrip() + " ... "
        return f"{type(self).__name__}({content})"


class ContentToken(Token):
    """A token that carries the characters it was scanned from."""

    def __init__(self, value: str, position: int):
        super().__init__(position)
        self.value: str = value

    def __eq__(self, other):
        return self.id == getattr(other, "id", None) and self.value == getattr(
            other, "value", None
        )


class StreamStartToken(Token):
    """Marks the beginning of an argument string."""

    id = "<stream start>"


class StreamEndToken(Token):
    """Marks the end of an argument string."""

    id = "<stream end>"


class ColonToken(Token):
    """Separates a family from its parameters, or the bounds of a range."""

    id = ":"


class EqualsToken(Token):
    """Separates a parameter key from its value."""

    id = "="


class CommaToken(Token):
    """Separates parameters or the two observables of a pair."""

    id = ","


class WhitespaceToken(ContentToken):
    """Blank characters between the meaningful parts of an argument."""

    id = "<whitespace>"

    def __repr__(self):
        return f"{type(self).__name__}({self.value!r})"


class LiteralToken(ContentToken):
    """A family name, parameter key, number or Pauli label."""

    id = "<literal>"
