"""Script grammar.

A script is a sequence of statements, each terminated by ``;``::

    context polar;                       context coords q1, q2;
    function c: theta -> -s;             relation s^2 -> 1 - c^2;
    algebra weyl [n=INT] [constant];     algebra free x1, x2;
    algebra commutator u1, u2 c=[[0, 1], [-1, 0]];
    let NAME = EXPR;                     print EXPR;
    map x = r*c, y = r*s;
    COMMAND [words] [key=value ...] [EXPR, ...];

Expressions use ``+ - * / ^``, ``[A, B]`` for commutators, ``{A, B}`` for
Poisson brackets and ``name(args)`` for operations.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax import Expr, ParseError, TokenStream, parse_expression, tokenize, unparse


@dataclass(frozen=True)
class MatrixLit:
    rows: tuple  # tuple of tuples of Expr


@dataclass(frozen=True)
class TupleLit:
    items: tuple  # tuple of Expr


@dataclass(frozen=True)
class ContextStmt:
    kind: str  # "polar" or "coords"
    names: tuple = ()
    line: int = 0


@dataclass(frozen=True)
class FunctionStmt:
    name: str
    table: tuple  # ((coordinate, Expr), ...)
    line: int = 0


@dataclass(frozen=True)
class RelationStmt:
    head: Expr
    replacement: Expr
    line: int = 0


@dataclass(frozen=True)
class AlgebraStmt:
    kind: str  # free, commutator, weyl
    names: tuple = ()
    n: int | None = None
    c: MatrixLit | None = None
    constant: bool = False
    line: int = 0


@dataclass(frozen=True)
class LetStmt:
    name: str
    expr: Expr
    line: int = 0


@dataclass(frozen=True)
class PrintStmt:
    expr: Expr
    line: int = 0


@dataclass(frozen=True)
class MapStmt:
    pairs: tuple  # ((name, Expr), ...)
    line: int = 0


@dataclass(frozen=True)
class Command:
    name: str
    words: tuple = ()
    options: tuple = ()  # ((key, Expr | MatrixLit | TupleLit), ...)
    exprs: tuple = ()
    line: int = 0


Statement = ContextStmt | FunctionStmt | RelationStmt | AlgebraStmt | LetStmt | PrintStmt | MapStmt | Command


@dataclass(frozen=True)
class Script:
    statements: tuple

    def __len__(self):
        return len(self.statements)


@dataclass(frozen=True)
class CommandShape:
    words: frozenset = frozenset()
    options: tuple = ()  # ((key, kind), ...) kind in expr, matrix, tuple
    positional: str = "none"  # none, expr, exprs, tuple


COMMANDS: dict[str, CommandShape] = {
    "jacobian": CommandShape(),
    "lift": CommandShape(frozenset({"left", "right", "classical"})),
    "gauge": CommandShape(frozenset({"classical"}), positional="expr"),
    "psi": CommandShape(),
    "gradlogdet": CommandShape(),
    "naive": CommandShape(frozenset({"left", "right"})),
    "mechanical": CommandShape(options=(("a", "matrix"), ("V", "expr"))),
    "lrdiff": CommandShape(options=(("a", "matrix"),)),
    "inverse": CommandShape(options=(("bound", "expr"), ("P", "tuple"), ("Q", "tuple"))),
    "theta": CommandShape(options=(("c", "matrix"), ("s", "expr"))),
    "ncjacobian": CommandShape(positional="tuple"),
    "check": CommandShape(
        frozenset({"canonical", "classical", "lift", "gauge", "zero", "equal", "selfadjoint", "left", "right"}),
        options=(("P", "tuple"), ("Q", "tuple")),
        positional="exprs",
    ),
}

KEYWORDS = {"context", "function", "relation", "algebra", "let", "print", "map"} | set(COMMANDS)


def parse(text: str) -> Script:
    """Parse a script; raises :class:`ParseError` with a location."""
    ts = TokenStream(tokenize(text))
    stmts = []
    while ts.current.kind != "EOF":
        if ts.accept(";"):
            continue
        stmts.append(_statement(ts))
    return Script(tuple(stmts))


def _end(ts: TokenStream):
    if not ts.at(";"):
        ts.error("expected ';'")
    ts.advance()


def _statement(ts: TokenStream):
    tok = ts.current
    if tok.kind != "NAME" or tok.text not in KEYWORDS:
        ts.error("expected a statement keyword")
    kw = ts.advance().text
    line = tok.line
    if kw == "context":
        if ts.accept("polar"):
            _end(ts)
            return ContextStmt("polar", (), line)
        if not ts.accept("coords"):
            ts.error("expected 'polar' or 'coords'")
        names = _name_list(ts)
        _end(ts)
        return ContextStmt("coords", names, line)
    if kw == "function":
        name = ts.expect_name()
        ts.expect(":")
        table = []
        while True:
            coord = ts.expect_name()
            ts.expect("->")
            table.append((coord, parse_expression(ts)))
            if not ts.accept(","):
                break
        _end(ts)
        return FunctionStmt(name, tuple(table), line)
    if kw == "relation":
        head = parse_expression(ts)
        ts.expect("->")
        repl = parse_expression(ts)
        _end(ts)
        return RelationStmt(head, repl, line)
    if kw == "algebra":
        return _algebra(ts, line)
    if kw == "let":
        name = ts.expect_name()
        if name in KEYWORDS:
            ts.error(f"{name!r} is a keyword")
        ts.expect("=")
        expr = parse_expression(ts)
        _end(ts)
        return LetStmt(name, expr, line)
    if kw == "print":
        expr = parse_expression(ts)
        _end(ts)
        return PrintStmt(expr, line)
    if kw == "map":
        pairs = []
        while True:
            name = ts.expect_name()
            ts.expect("=")
            pairs.append((name, parse_expression(ts)))
            if not ts.accept(","):
                break
        _end(ts)
        return MapStmt(tuple(pairs), line)
    return _command(ts, kw, line)


def _name_list(ts: TokenStream) -> tuple:
    names = [ts.expect_name()]
    while ts.accept(","):
        names.append(ts.expect_name())
    return tuple(names)


def _algebra(ts: TokenStream, line: int) -> AlgebraStmt:
    kind_tok = ts.current
    kind = ts.expect_name()
    if kind == "free":
        names = _name_list(ts)
        _end(ts)
        return AlgebraStmt("free", names, line=line)
    if kind == "commutator":
        names = _name_list(ts)
        ts.expect("c")
        ts.expect("=")
        c = _matrix(ts)
        _end(ts)
        return AlgebraStmt("commutator", names, c=c, line=line)
    if kind == "weyl":
        n = None
        constant = False
        while not ts.at(";"):
            if ts.accept("n"):
                ts.expect("=")
                n = ts.expect_int()
            elif ts.accept("constant"):
                constant = True
            else:
                ts.error("expected 'n=INT' or 'constant'")
        _end(ts)
        return AlgebraStmt("weyl", (), n=n, constant=constant, line=line)
    ts.error("expected 'free', 'commutator' or 'weyl'", kind_tok)


def _matrix(ts: TokenStream) -> MatrixLit:
    ts.expect("[")
    rows = [_row(ts)]
    while ts.accept(","):
        rows.append(_row(ts))
    ts.expect("]")
    return MatrixLit(tuple(rows))


def _row(ts: TokenStream) -> tuple:
    ts.expect("[")
    items = [parse_expression(ts)]
    while ts.accept(","):
        items.append(parse_expression(ts))
    ts.expect("]")
    return tuple(items)


def _tuple(ts: TokenStream) -> TupleLit:
    ts.expect("(")
    items = [parse_expression(ts)]
    while ts.accept(","):
        items.append(parse_expression(ts))
    ts.expect(")")
    return TupleLit(tuple(items))


def _command(ts: TokenStream, name: str, line: int) -> Command:
    shape = COMMANDS[name]
    option_kinds = dict(shape.options)
    words, options, exprs = [], [], []
    while not ts.at(";"):
        tok = ts.current
        if tok.kind == "NAME" and tok.text in option_kinds and ts.peek().text == "=" and ts.peek().kind == "OP":
            ts.advance()
            ts.advance()
            kind = option_kinds[tok.text]
            if kind == "matrix":
                value = _matrix(ts)
            elif kind == "tuple":
                value = _tuple(ts)
            else:
                value = parse_expression(ts)
            options.append((tok.text, value))
            continue
        if tok.kind == "NAME" and tok.text in shape.words and not exprs:
            words.append(ts.advance().text)
            continue
        if shape.positional == "none" or (shape.positional in ("expr", "tuple") and exprs):
            ts.error(f"unexpected input in '{name}'")
        if shape.positional == "tuple":
            exprs.append(_tuple(ts))
            continue
        exprs.append(parse_expression(ts))
        if shape.positional == "exprs":
            ts.accept(",")
    _end(ts)
    return Command(name, tuple(words), tuple(options), tuple(exprs), line)


# -- printing ---------------------------------------------------------------------------


def _value_text(v) -> str:
    if isinstance(v, MatrixLit):
        return "[" + ", ".join("[" + ", ".join(unparse(e) for e in row) + "]" for row in v.rows) + "]"
    if isinstance(v, TupleLit):
        return "(" + ", ".join(unparse(e) for e in v.items) + ")"
    return unparse(v)


def format_statement(s) -> str:
    """Canonical text of one statement (without the terminating ``;``)."""
    if isinstance(s, ContextStmt):
        return "context polar" if s.kind == "polar" else "context coords " + ", ".join(s.names)
    if isinstance(s, FunctionStmt):
        return f"function {s.name}: " + ", ".join(f"{c} -> {unparse(e)}" for c, e in s.table)
    if isinstance(s, RelationStmt):
        return f"relation {unparse(s.head)} -> {unparse(s.replacement)}"
    if isinstance(s, AlgebraStmt):
        if s.kind == "free":
            return "algebra free " + ", ".join(s.names)
        if s.kind == "commutator":
            return "algebra commutator " + ", ".join(s.names) + " c=" + _value_text(s.c)
        parts = ["algebra weyl"]
        if s.n is not None:
            parts.append(f"n={s.n}")
        if s.constant:
            parts.append("constant")
        return " ".join(parts)
    if isinstance(s, LetStmt):
        return f"let {s.name} = {unparse(s.expr)}"
    if isinstance(s, PrintStmt):
        return f"print {unparse(s.expr)}"
    if isinstance(s, MapStmt):
        return "map " + ", ".join(f"{n} = {unparse(e)}" for n, e in s.pairs)
    if isinstance(s, Command):
        parts = [s.name, *s.words]
        parts += [f"{k}={_value_text(v)}" for k, v in s.options]
        if s.exprs:
            parts.append(", ".join(_value_text(e) for e in s.exprs))
        return " ".join(parts)
    raise TypeError(f"not a statement: {s!r}")


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + ";\n" for s in script.statements)


def strip_lines(script: Script) -> Script:
    """Same statements with line numbers cleared (for structural comparison)."""
    from dataclasses import replace

    return Script(tuple(replace(s, line=0) for s in script.statements))


__all__ = [
    "AlgebraStmt",
    "COMMANDS",
    "Command",
    "ContextStmt",
    "FunctionStmt",
    "LetStmt",
    "MapStmt",
    "MatrixLit",
    "ParseError",
    "PrintStmt",
    "RelationStmt",
    "Script",
    "TupleLit",
    "format_script",
    "format_statement",
    "parse",
    "strip_lines",
]
