"""Tokens, expression trees and a recursive-descent expression parser.

The same grammar is used for scalar text (``1 - c^2``, ``6*q/(1 + 3*q^2)``),
algebra expressions (``p^2*q``, ``[H, F]``) and the script language built on
top of it in :mod:`ncham.cli.parser`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    """Syntax error carrying a 1-based line/column location."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, NAME, OP, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+)
  | (?P<name>[^\W\d]\w*)
  | (?P<op>->|:=|[-+*/^()\[\]{},;=:])
    """,
    re.VERBOSE | re.UNICODE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "number":
            tokens.append(Token("NUMBER", m.group(), line, col))
        elif kind == "name":
            tokens.append(Token("NAME", m.group(), line, col))
        elif kind == "op":
            tokens.append(Token("OP", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# -- expression trees ---------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class Bracket:
    kind: str  # "comm" for [A, B], "poisson" for {A, B}
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Name, Neg, BinOp, Call, Bracket]

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


class TokenStream:
    """Cursor over a token list with the small helpers every parser needs."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.current
        return tok.kind in ("OP", "NAME") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def expect_name(self) -> str:
        tok = self.current
        if tok.kind != "NAME":
            self.error("expected a name")
        self.advance()
        return tok.text

    def expect_int(self) -> int:
        neg = self.accept("-")
        tok = self.current
        if tok.kind != "NUMBER":
            self.error("expected an integer")
        self.advance()
        return -int(tok.text) if neg else int(tok.text)

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.current
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.col)


def parse_expression(ts: TokenStream) -> Expr:
    return _parse_sum(ts)


def _parse_sum(ts: TokenStream) -> Expr:
    left = _parse_product(ts)
    while ts.current.kind == "OP" and ts.current.text in ("+", "-"):
        op = ts.advance().text
        left = BinOp(op, left, _parse_product(ts))
    return left


def _parse_product(ts: TokenStream) -> Expr:
    left = _parse_unary(ts)
    while ts.current.kind == "OP" and ts.current.text in ("*", "/"):
        op = ts.advance().text
        left = BinOp(op, left, _parse_unary(ts))
    return left


def _parse_unary(ts: TokenStream) -> Expr:
    if ts.accept("-"):
        return Neg(_parse_unary(ts))
    if ts.accept("+"):
        return _parse_unary(ts)
    return _parse_power(ts)


def _parse_power(ts: TokenStream) -> Expr:
    base = _parse_atom(ts)
    if ts.accept("^"):
        # right associative; the exponent may carry a sign
        return BinOp("^", base, _parse_unary(ts))
    return base


def _parse_atom(ts: TokenStream) -> Expr:
    tok = ts.current
    if tok.kind == "NUMBER":
        ts.advance()
        return Num(int(tok.text))
    if tok.kind == "NAME":
        ts.advance()
        if ts.accept("("):
            args = []
            if not ts.at(")"):
                args.append(parse_expression(ts))
                while ts.accept(","):
                    args.append(parse_expression(ts))
            ts.expect(")")
            return Call(tok.text, tuple(args))
        return Name(tok.text)
    if ts.accept("("):
        inner = parse_expression(ts)
        ts.expect(")")
        return inner
    if tok.kind == "OP" and tok.text in ("[", "{"):
        ts.advance()
        closing = "]" if tok.text == "[" else "}"
        left = parse_expression(ts)
        ts.expect(",")
        right = parse_expression(ts)
        ts.expect(closing)
        return Bracket("comm" if tok.text == "[" else "poisson", left, right)
    ts.error("expected an expression")


def parse_expr(text: str) -> Expr:
    """Parse a complete expression string."""
    ts = TokenStream(tokenize(text))
    expr = parse_expression(ts)
    if ts.current.kind != "EOF":
        ts.error("unexpected trailing input")
    return expr


def unparse(expr: Expr) -> str:
    """Render an expression so that ``parse_expr(unparse(e)) == e``."""
    return _unparse(expr, 0)


def _unparse(e: Expr, ctx_prec: int) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Call):
        return f"{e.func}({', '.join(_unparse(a, 0) for a in e.args)})"
    if isinstance(e, Bracket):
        lo, hi = ("[", "]") if e.kind == "comm" else ("{", "}")
        return f"{lo}{_unparse(e.left, 0)}, {_unparse(e.right, 0)}{hi}"
    if isinstance(e, Neg):
        s = "-" + _unparse(e.operand, 3)
        return f"({s})" if ctx_prec > 3 else s
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        if e.op == "^":
            s = f"{_unparse(e.left, 5)}^{_unparse(e.right, 3)}"
        else:
            # left-associative: the right operand needs strictly higher binding
            s = f"{_unparse(e.left, p)} {e.op} {_unparse(e.right, p + 1)}"
        return f"({s})" if p < ctx_prec else s
    raise TypeError(f"not an expression node: {e!r}")
