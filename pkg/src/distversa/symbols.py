"""Density-expression grammar: tokenizer, parser, renderer, symbol counter.

The grammar is a plain ASCII surface syntax for probability mass/density
formulas written left to right:

* identifiers ``[a-z]+`` are parameters, or the outcome variable when the
  variable name is declared to :func:`tokenize`;
* ``e`` and ``pi`` are reserved literal constants (Number tokens);
* ``~`` folds a minus sign into the numeral that follows (``~1`` is -1),
  so signed literals are single tokens;
* binary operators, two precedence tiers below parentheses:
  ``^`` (power) and ``rt`` (root, ``a rt n`` = n-th root of a), then
  ``*`` ``/``, then ``+`` ``-``; all left-associative within a tier;
* a fixed set of elementary functions plus ``G`` (the gamma function);
  function arguments are always parenthesized and those two parentheses
  are counted.

Every token costs exactly one symbol; :func:`symbol_count` is therefore
the token count of the rendered expression, and counting is compositional
on the tree: a binary node adds 1, a function application adds 3, and an
explicit source-level grouping adds 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

from .errors import LexError, ParseError, UnsupportedNotationError

ELEMENTARY_FUNCTIONS = frozenset(
    {
        "exp",
        "ln",
        "sin",
        "cos",
        "tan",
        "asin",
        "acos",
        "atan",
        "sinh",
        "cosh",
        "tanh",
        "asinh",
        "acosh",
        "atanh",
    }
)
GAMMA_FUNCTION = "G"
NAMED_CONSTANTS = ("e", "pi")

# Notation the counting rules explicitly exclude.
_BANNED_WORDS = frozenset({"sum", "prod", "integral", "lim", "diff", "deriv"})
_BANNED_CHARS = "∑∫∂Σ√"

_POWER_OPS = ("^", "rt")
_MUL_OPS = ("*", "/")
_ADD_OPS = ("+", "-")


class TokenKind(Enum):
    NUMBER = "number"
    VARIABLE = "variable"
    PARAMETER = "parameter"
    OPERATOR = "operator"
    LPAREN = "lparen"
    RPAREN = "rparen"
    FUNCTION = "function"
    GAMMA = "gamma"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    position: int = 0

    @property
    def weight(self) -> int:
        """Symbol weight; every token kind counts exactly 1."""
        return 1


_NUMERAL_RE = re.compile(r"\d+(?:\.\d+)?")
_IDENT_RE = re.compile(r"[a-z]+")


def tokenize(text: str, variables: Iterable[str] = ("x", "y", "w")) -> list[Token]:
    """Lex ``text`` into tokens.

    ``variables`` names the outcome variable(s) of the density; any other
    identifier is classified as a parameter.  Classification does not
    affect symbol weights.
    """
    varset = frozenset(variables)
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _BANNED_CHARS:
            raise UnsupportedNotationError(
                f"construct {ch!r} is not permitted by the counting rules", i
            )
        if ch == "~":
            m = _NUMERAL_RE.match(text, i + 1)
            if m:
                tokens.append(Token(TokenKind.NUMBER, "~" + m.group(), i))
                i = m.end()
                continue
            m = _IDENT_RE.match(text, i + 1)
            if m and m.group() in NAMED_CONSTANTS:
                tokens.append(Token(TokenKind.NUMBER, "~" + m.group(), i))
                i = m.end()
                continue
            raise LexError("'~' must immediately prefix a numeral", i)
        m = _NUMERAL_RE.match(text, i)
        if m:
            tokens.append(Token(TokenKind.NUMBER, m.group(), i))
            i = m.end()
            continue
        if ch == GAMMA_FUNCTION:
            tokens.append(Token(TokenKind.GAMMA, GAMMA_FUNCTION, i))
            i += 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            word = m.group()
            if word in _BANNED_WORDS:
                raise UnsupportedNotationError(
                    f"construct {word!r} is not permitted by the counting rules", i
                )
            if word == "rt":
                tokens.append(Token(TokenKind.OPERATOR, "rt", i))
            elif word in ELEMENTARY_FUNCTIONS:
                tokens.append(Token(TokenKind.FUNCTION, word, i))
            elif word in NAMED_CONSTANTS:
                tokens.append(Token(TokenKind.NUMBER, word, i))
            elif word in varset:
                tokens.append(Token(TokenKind.VARIABLE, word, i))
            else:
                tokens.append(Token(TokenKind.PARAMETER, word, i))
            i = m.end()
            continue
        if ch == "(":
            tokens.append(Token(TokenKind.LPAREN, ch, i))
        elif ch == ")":
            tokens.append(Token(TokenKind.RPAREN, ch, i))
        elif ch in "^*/+-":
            tokens.append(Token(TokenKind.OPERATOR, ch, i))
        else:
            raise LexError(f"unknown character {ch!r}", i)
        i += 1
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    lexeme: str
    grouped: int = 0

    @property
    def value(self) -> float:
        text = self.lexeme
        sign = 1.0
        if text.startswith("~"):
            sign, text = -1.0, text[1:]
        if text == "e":
            import math

            return sign * math.e
        if text == "pi":
            import math

            return sign * math.pi
        return sign * float(text)


@dataclass(frozen=True)
class Ref:
    name: str
    is_variable: bool = False
    grouped: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    grouped: int = 0


@dataclass(frozen=True)
class FuncApp:
    func: str  # elementary function name or "G"
    arg: "Node"
    grouped: int = 0

    @property
    def is_gamma(self) -> bool:
        return self.func == GAMMA_FUNCTION


Node = Union[Number, Ref, BinOp, FuncApp]


class _Parser:
    """Recursive-descent parser honoring the stated precedence tiers."""

    def __init__(self, tokens: Sequence[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self._end())
        self.pos += 1
        return tok

    def _end(self) -> int:
        return self.tokens[-1].position + 1 if self.tokens else 0

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok.lexeme!r}", tok.position)
        return node

    def _binary_tier(self, ops: tuple[str, ...], sub) -> Node:
        node = sub()
        while True:
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.OPERATOR or tok.lexeme not in ops:
                return node
            self.pos += 1
            node = BinOp(tok.lexeme, node, sub())

    def expr(self) -> Node:
        return self._binary_tier(_ADD_OPS, self.term)

    def term(self) -> Node:
        return self._binary_tier(_MUL_OPS, self.power)

    def power(self) -> Node:
        return self._binary_tier(_POWER_OPS, self.atom)

    def atom(self) -> Node:
        tok = self.next()
        if tok.kind is TokenKind.NUMBER:
            return Number(tok.lexeme)
        if tok.kind in (TokenKind.VARIABLE, TokenKind.PARAMETER):
            return Ref(tok.lexeme, is_variable=tok.kind is TokenKind.VARIABLE)
        if tok.kind in (TokenKind.FUNCTION, TokenKind.GAMMA):
            open_tok = self.next()
            if open_tok.kind is not TokenKind.LPAREN:
                raise ParseError(
                    f"function {tok.lexeme!r} requires a parenthesized argument",
                    open_tok.position,
                )
            arg = self.expr()
            self._expect_rparen()
            return FuncApp(tok.lexeme, arg)
        if tok.kind is TokenKind.LPAREN:
            inner = self.expr()
            self._expect_rparen()
            return replace(inner, grouped=inner.grouped + 1)
        raise ParseError(f"unexpected token {tok.lexeme!r}", tok.position)

    def _expect_rparen(self) -> None:
        tok = self.peek()
        if tok is None:
            raise ParseError("unbalanced parentheses", self._end())
        if tok.kind is not TokenKind.RPAREN:
            raise ParseError(f"expected ')', found {tok.lexeme!r}", tok.position)
        self.pos += 1


def parse(tokens: Sequence[Token]) -> Node:
    """Build the AST for a lexed token sequence."""
    return _Parser(tokens).parse()


def parse_text(text: str, variables: Iterable[str] = ("x", "y", "w")) -> Node:
    return parse(tokenize(text, variables))


# ---------------------------------------------------------------------------
# Rendering and counting
# ---------------------------------------------------------------------------


def render(node: Node) -> str:
    """Serialize the AST back to grammar text.

    Parentheses are emitted exactly where the tree records them (source
    groupings and mandated function-argument parentheses), so rendering a
    parse-derived tree reproduces the original token sequence.
    """
    if isinstance(node, Number):
        body = node.lexeme
    elif isinstance(node, Ref):
        body = node.name
    elif isinstance(node, BinOp):
        body = f"{render(node.left)} {node.op} {render(node.right)}"
    elif isinstance(node, FuncApp):
        body = f"{node.func}({render(node.arg)})"
    else:  # pragma: no cover
        raise TypeError(f"not an AST node: {node!r}")
    return "(" * node.grouped + body + ")" * node.grouped


def symbol_count(node: Node) -> int:
    """Count symbols per the tallying rules.

    Numbers, variables, parameters, operators, parentheses, and function
    symbols each cost 1; a function application therefore contributes
    3 plus its argument (the function symbol and its two mandated
    parentheses); an explicit grouping contributes 2.
    """
    extra = 2 * node.grouped
    if isinstance(node, (Number, Ref)):
        return 1 + extra
    if isinstance(node, BinOp):
        return symbol_count(node.left) + symbol_count(node.right) + 1 + extra
    if isinstance(node, FuncApp):
        return symbol_count(node.arg) + 3 + extra
    raise TypeError(f"not an AST node: {node!r}")


def count_text(text: str, variables: Iterable[str] = ("x", "y", "w")) -> int:
    """Symbol count of raw grammar text (equals its token count)."""
    tokens = tokenize(text, variables)
    node = parse(tokens)
    count = symbol_count(node)
    assert count == len(tokens)
    return count


def rank_parameterizations(
    counts: Mapping[str, int] | Sequence[tuple[str, int]],
) -> tuple[tuple[str, ...], dict[str, int]]:
    """Return the labels achieving the minimal symbol count, plus all counts.

    The minimal set is ordered by label so downstream tie handling is
    deterministic.
    """
    table = dict(counts)
    if not table:
        raise ValueError("at least one parameterization is required")
    best = min(table.values())
    minimal = tuple(sorted(label for label, c in table.items() if c == best))
    return minimal, table
