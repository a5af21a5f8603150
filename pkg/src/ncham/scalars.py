"""Exact commutative coefficients: rational functions over Q in ``h``,
coordinate symbols and declared function symbols.

A :class:`ScalarContext` fixes the symbols, the derivative tables of the
function symbols and a set of algebraic relations.  :class:`Scalar` values are
kept in a canonical form so that equality is representational equality:

* numerator and denominator are integer polynomials reduced by the relations;
* the denominator contains no relation head symbol (it is rationalized with
  the norm of the relation's algebraic extension);
* common factors and integer content are cancelled and the leading
  coefficient of the denominator (graded-lex order) is positive.

Polynomial storage, exact division and gcd come from sympy's sparse
polynomial rings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from numbers import Rational
from typing import Iterable, Mapping

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from . import syntax

H_NAME = "h"


class ScalarError(ValueError):
    """Invalid scalar-context declaration or scalar operation."""


class Relation:
    """Rewrite rule ``var^power -> replacement`` in a scalar context."""

    __slots__ = ("var", "power", "replacement", "index")

    def __init__(self, var: str, power: int, replacement, index: int):
        self.var = var
        self.power = power
        self.replacement = replacement  # PolyElement
        self.index = index

    def __repr__(self):
        return f"Relation({self.var}^{self.power} -> {self.replacement.as_expr()})"


class ScalarContext:
    """Symbols, derivative tables and relations for a family of scalars.

    ``functions`` maps a function-symbol name to its derivative table
    ``{coordinate: expression}``; unlisted coordinates have derivative zero.
    ``relations`` is a sequence of ``(head, replacement)`` text pairs such as
    ``("s^2", "1 - c^2")``.  The head must be a power of a single symbol, the
    replacement must have lower degree in that symbol and must not mention the
    head symbol of any other relation.
    """

    def __init__(
        self,
        coordinates: Iterable[str] = (),
        functions: Mapping[str, Mapping[str, str]] | None = None,
        relations: Iterable[tuple[str, str]] = (),
        name: str | None = None,
    ):
        self.coordinates = tuple(coordinates)
        functions = dict(functions or {})
        self.function_names = tuple(functions)
        self.name = name
        names = self.coordinates + self.function_names
        for n in names:
            if not n.isidentifier():
                raise ScalarError(f"invalid symbol name {n!r}")
            if n == H_NAME:
                raise ScalarError("'h' is reserved for the deformation parameter")
        if len(set(names)) != len(names):
            raise ScalarError("duplicate symbol names")
        self.symbols = names + (H_NAME,)
        self._index = {n: i for i, n in enumerate(self.symbols)}
        self.ring = PolyRing(self.symbols, ZZ, grlex)
        self._gens = self.ring.gens
        self.relations: tuple[Relation, ...] = ()
        self._head_indices: tuple[int, ...] = ()
        self.zero = Scalar._raw(self, self.ring.zero, self.ring.one)
        self.one = Scalar._raw(self, self.ring.one, self.ring.one)
        self.h = Scalar._raw(self, self._gens[-1], self.ring.one)

        # Derivative tables are parsed before relations are installed so the
        # raw text is taken literally.
        tables = {}
        for fname, table in functions.items():
            row = {}
            for coord, text in table.items():
                if coord not in self.coordinates:
                    raise ScalarError(f"derivative of {fname} w.r.t. unknown coordinate {coord!r}")
                val = self.parse(text) if isinstance(text, str) else self.coerce(text)
                if not val.is_polynomial():
                    raise ScalarError(f"derivative table entry d{fname}/d{coord} must be polynomial")
                row[coord] = val.num
            tables[fname] = row
        self._tables = tables
        self._dsym = {}
        for coord in self.coordinates:
            entries = []
            for i, sym in enumerate(self.symbols):
                if sym == coord:
                    entries.append((i, self.ring.one))
                elif sym in tables and coord in tables[sym] and tables[sym][coord]:
                    entries.append((i, tables[sym][coord]))
            self._dsym[coord] = tuple(entries)

        rels = []
        for head, repl in relations:
            head_e = syntax.parse_expr(head)
            var, power = _pure_power(head_e)
            if var not in self._index or var == H_NAME:
                raise ScalarError(f"relation head {head!r} must be a power of a declared symbol")
            if any(r.var == var for r in rels):
                raise ScalarError(f"two relations share the head symbol {var!r}")
            rep = self.parse(repl)
            if not rep.is_polynomial():
                raise ScalarError("relation replacement must be polynomial")
            rels.append(Relation(var, power, rep.num, self._index[var]))
        for r in rels:
            if r.replacement.degree(r.index) >= r.power:
                raise ScalarError(f"replacement for {r.var}^{r.power} does not lower its degree")
            for other in rels:
                if other is not r and r.replacement.degree(other.index) > 0:
                    raise ScalarError(
                        f"replacement for {r.var}^{r.power} mentions {other.var}, the head of another relation"
                    )
        self.relations = tuple(rels)
        self._head_indices = tuple(r.index for r in self.relations)
        self._key = (
            self.coordinates,
            tuple(
                (f, tuple(sorted((c, str(p.as_expr())) for c, p in tables[f].items())))
                for f in self.function_names
            ),
            tuple((r.var, r.power, str(r.replacement.as_expr())) for r in self.relations),
        )

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return self is other or (isinstance(other, ScalarContext) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"ScalarContext({label}coordinates={self.coordinates}, functions={self.function_names})"

    # -- construction ---------------------------------------------------------

    def symbol(self, name: str) -> "Scalar":
        try:
            i = self._index[name]
        except KeyError:
            raise ScalarError(f"unknown symbol {name!r}") from None
        return Scalar._raw(self, self._gens[i], self.ring.one)

    def has_symbol(self, name: str) -> bool:
        return name in self._index

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.ctx is self or value.ctx == self:
                return value if value.ctx is self else Scalar._raw(self, value.num, value.den)
            raise ScalarError("scalar belongs to a different context")
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, int):
            return Scalar._raw(self, self.ring(value), self.ring.one)
        if isinstance(value, Rational):
            value = Fraction(value)
            return Scalar._raw(self, self.ring(value.numerator), self.ring(value.denominator))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a scalar")

    def make(self, num, den=None) -> "Scalar":
        """Canonical scalar from ring elements ``num/den``."""
        return _canonical(self, num, self.ring.one if den is None else den)

    def parse(self, text: str) -> "Scalar":
        """Parse scalar text (integers, symbols, ``+ - * / ^``, parentheses)."""
        return self.evaluate(syntax.parse_expr(text))

    def evaluate(self, expr) -> "Scalar":
        if isinstance(expr, syntax.Num):
            return self.coerce(expr.value)
        if isinstance(expr, syntax.Name):
            return self.symbol(expr.id)
        if isinstance(expr, syntax.Neg):
            return -self.evaluate(expr.operand)
        if isinstance(expr, syntax.BinOp):
            left = self.evaluate(expr.left)
            if expr.op == "^":
                return left ** integer_exponent(expr.right)
            right = self.evaluate(expr.right)
            if expr.op == "+":
                return left + right
            if expr.op == "-":
                return left - right
            if expr.op == "*":
                return left * right
            return left / right
        raise ScalarError(f"not a scalar expression: {syntax.unparse(expr)}")

    # -- rewriting ------------------------------------------------------------

    def reduce_poly(self, p):
        """Apply the relation rules to a ring element until none applies."""
        for rel in self.relations:
            v, k = rel.index, rel.power
            while p.degree(v) >= k:
                low, high = {}, []
                for mon, c in p.items():
                    if mon[v] >= k:
                        high.append((mon, c))
                    else:
                        low[mon] = c
                p = self.ring(low)
                for mon, c in high:
                    m = list(mon)
                    m[v] -= k
                    p += self.ring({tuple(m): c}) * rel.replacement
        return p

    def critical_pairs(self):
        """Overlaps of relation heads (commutative monomial rewriting)."""
        pairs = []
        for a in self.relations:
            for b in self.relations:
                if a.index == b.index:
                    # self-overlaps v^k / v^k share the lcm v^k
                    pairs.append((a, b, a.power))
        return pairs

    def self_check(self) -> list[str]:
        """Return a list of problems; empty means the context is consistent.

        Checks local confluence on critical pairs, compatibility of every
        relation with differentiation, and symmetry of mixed partials of the
        function symbols.
        """
        problems = []
        for a, b, power in self.critical_pairs():
            v = a.index
            lcm = self._gens[v] ** power
            via_a = self.reduce_poly(_replace_once(lcm, a, self.ring))
            via_b = self.reduce_poly(_replace_once(lcm, b, self.ring))
            if via_a != via_b:
                problems.append(f"critical pair on {a.var}^{power} does not join")
        for rel in self.relations:
            poly = self._gens[rel.index] ** rel.power - rel.replacement
            for coord in self.coordinates:
                d = self.reduce_poly(self._diff_poly(poly, coord))
                if d:
                    problems.append(f"relation {rel.var}^{rel.power} is not compatible with d/d{coord}")
        for f in self.function_names:
            fs = self.symbol(f)
            for c1 in self.coordinates:
                for c2 in self.coordinates:
                    if c1 < c2 and fs.diff(c1).diff(c2) != fs.diff(c2).diff(c1):
                        problems.append(f"mixed partials of {f} w.r.t. {c1}, {c2} differ")
        return problems

    def _diff_poly(self, p, coord: str):
        out = self.ring.zero
        for i, dv in self._dsym[coord]:
            dp = p.diff(self._gens[i])
            if dp:
                out += dp * dv
        return out

    def derivative_table(self, fname: str) -> dict[str, "Scalar"]:
        return {c: self.make(p) for c, p in self._tables[fname].items()}

    def extend(self, coordinates: Iterable[str] = (), name: str | None = None) -> "ScalarContext":
        """New context with extra coordinates (function tables and relations kept)."""
        funcs = {
            f: {c: str(p.as_expr()).replace("**", "^") for c, p in self._tables[f].items()}
            for f in self.function_names
        }
        rels = [(f"{r.var}^{r.power}", str(r.replacement.as_expr()).replace("**", "^")) for r in self.relations]
        return ScalarContext(self.coordinates + tuple(coordinates), funcs, rels, name=name)


def _replace_once(mono_poly, rel: Relation, ring):
    (mon, c), = mono_poly.items()
    m = list(mon)
    m[rel.index] -= rel.power
    return ring({tuple(m): c}) * rel.replacement


def _pure_power(expr) -> tuple[str, int]:
    if isinstance(expr, syntax.Name):
        return expr.id, 1
    if (
        isinstance(expr, syntax.BinOp)
        and expr.op == "^"
        and isinstance(expr.left, syntax.Name)
        and isinstance(expr.right, syntax.Num)
        and expr.right.value >= 1
    ):
        return expr.left.id, expr.right.value
    raise ScalarError(f"relation head must be a power of one symbol, got {syntax.unparse(expr)!r}")


def integer_exponent(expr) -> int:
    if isinstance(expr, syntax.Num):
        return expr.value
    if isinstance(expr, syntax.Neg) and isinstance(expr.operand, syntax.Num):
        return -expr.operand.value
    raise ScalarError("exponents must be integer literals")


# -- canonical form -----------------------------------------------------------


def _coefficients_in(p, v: int, power: int):
    """Coefficients of ``v^0..v^(power-1)`` of a reduced element."""
    coeffs = [dict() for _ in range(power)]
    for mon, c in p.items():
        m = list(mon)
        e = m[v]
        m[v] = 0
        coeffs[e][tuple(m)] = c
    return coeffs


def _det(m, ring):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ring.zero
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * _det(minor, ring)
            total = total + term if j % 2 == 0 else total - term
    return total


def _rationalize(ctx: ScalarContext, num, den):
    """Make ``den`` free of relation head symbols, keeping ``num/den`` fixed."""
    ring = ctx.ring
    for rel in ctx.relations:
        v, k = rel.index, rel.power
        if den.degree(v) <= 0:
            continue
        # matrix of multiplication by den on the basis 1, v, ..., v^(k-1)
        gv = ctx._gens[v]
        cols = []
        for j in range(k):
            cols.append([ring(c) for c in _coefficients_in(ctx.reduce_poly(den * gv ** j), v, k)])
        mat = [[cols[j][i] for j in range(k)] for i in range(k)]
        norm = _det(mat, ring)
        if not norm:
            raise ZeroDivisionError("denominator is a zero divisor modulo the relations")
        # first column of the adjugate: den * cof == norm (mod relations)
        cof = ring.zero
        for i in range(k):
            minor = [row[:i] + row[i + 1:] for r, row in enumerate(mat) if r != 0]
            c = _det(minor, ring) if minor else ring.one
            cof += (c if i % 2 == 0 else -c) * gv ** i
        num = ctx.reduce_poly(num * cof)
        den = norm
    return num, den


def _canonical(ctx: ScalarContext, num, den) -> "Scalar":
    if not den:
        raise ZeroDivisionError("scalar division by zero")
    if ctx.relations:
        num = ctx.reduce_poly(num)
        den = ctx.reduce_poly(den)
        if not den:
            raise ZeroDivisionError("scalar division by zero (denominator reduces to 0)")
        if any(den.degree(i) > 0 for i in ctx._head_indices):
            num, den = _rationalize(ctx, num, den)
    if not num:
        return Scalar._raw(ctx, ctx.ring.zero, ctx.ring.one)
    if den != ctx.ring.one:
        num, den = num.cancel(den)
    return Scalar._raw(ctx, num, den)


class Scalar:
    """Element of a scalar context in canonical reduced form."""

    __slots__ = ("ctx", "num", "den", "_hash")

    @classmethod
    def _raw(cls, ctx, num, den):
        self = object.__new__(cls)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None
        return self

    # -- arithmetic -----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ctx is self.ctx:
                return other
            if other.ctx == self.ctx:
                return Scalar._raw(self.ctx, other.num, other.den)
            raise ScalarError("scalars from different contexts")
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.ctx.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        one = self.ctx.ring.one
        if self.den == one and o.den == one:
            # sum of reduced polynomials is reduced
            return Scalar._raw(self.ctx, self.num + o.num, one)
        if self.den == o.den:
            return _canonical(self.ctx, self.num + o.num, self.den)
        return _canonical(self.ctx, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.ctx, -self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        one = ctx.ring.one
        if self.den == one and o.den == one:
            num = self.num * o.num
            if ctx.relations:
                num = ctx.reduce_poly(num)
            return Scalar._raw(ctx, num, one)
        return _canonical(ctx, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("scalar division by zero")
        return _canonical(self.ctx, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "Scalar":
        return self.ctx.one / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (self.ctx is other.ctx or self.ctx == other.ctx) and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self == self.ctx.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    # -- structure ------------------------------------------------------------

    def is_polynomial(self) -> bool:
        return self.den == self.ctx.ring.one

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        return Fraction(int(self.num.LC if self.num else 0), int(self.den.LC))

    def degree(self, name: str) -> int:
        """Degree of the numerator in ``name`` (−1 for zero)."""
        i = self.ctx._index[name]
        return max(self.num.degree(i), -1)

    def depends_on(self, name: str) -> bool:
        i = self.ctx._index[name]
        return self.num.degree(i) > 0 or self.den.degree(i) > 0

    def diff(self, coord: str) -> "Scalar":
        """Derivative w.r.t. a coordinate (chain rule through function symbols)."""
        ctx = self.ctx
        if coord not in ctx._dsym:
            raise ScalarError(f"unknown coordinate {coord!r}")
        dn = ctx._diff_poly(self.num, coord)
        if self.den == ctx.ring.one:
            return _canonical(ctx, dn, ctx.ring.one) if ctx.relations else Scalar._raw(ctx, dn, ctx.ring.one)
        dd = ctx._diff_poly(self.den, coord)
        return _canonical(ctx, dn * self.den - self.num * dd, self.den * self.den)

    def reduce(self) -> "Scalar":
        """Canonical form is already relation-reduced; kept as an explicit entry point."""
        return _canonical(self.ctx, self.num, self.den)

    def subs(self, mapping: Mapping[str, "Scalar"], target: ScalarContext | None = None) -> "Scalar":
        """Substitute symbols by scalars of ``target`` (default: own context).

        Symbols missing from ``mapping`` are carried over by name and must
        exist in ``target``.
        """
        target = target or self.ctx
        images = []
        for sym in self.ctx.symbols:
            if sym in mapping:
                images.append(target.coerce(mapping[sym]))
            elif target.has_symbol(sym):
                images.append(target.symbol(sym))
            else:
                images.append(None)

        def ev(p):
            total = target.zero
            powers: dict = {}
            for mon, c in p.items():
                term = target.coerce(int(c))
                for i, e in enumerate(mon):
                    if e:
                        if images[i] is None:
                            raise ScalarError(
                                f"symbol {self.ctx.symbols[i]!r} cannot be expressed in the target context"
                            )
                        key = (i, e)
                        if key not in powers:
                            powers[key] = images[i] ** e
                        term = term * powers[key]
                total = total + term
            return total

        return ev(self.num) / ev(self.den)

    def to_context(self, target: ScalarContext) -> "Scalar":
        """The same expression in another context, matching symbols by name."""
        if target is self.ctx or target == self.ctx:
            return target.coerce(self)
        idx = [target._index.get(s) for s in self.ctx.symbols]
        width = len(target.symbols)

        def move(p):
            terms = {}
            for mon, c in p.items():
                m = [0] * width
                for i, e in enumerate(mon):
                    if e:
                        if idx[i] is None:
                            raise ScalarError(f"symbol {self.ctx.symbols[i]!r} is not available in the target context")
                        m[idx[i]] = e
                terms[tuple(m)] = c
            return target.ring(terms)

        num, den = move(self.num), move(self.den)
        if den.is_ground and target._key[2] == self.ctx._key[2]:
            return Scalar._raw(target, num, den)
        return target.make(num, den)

    def at_h_zero(self) -> "Scalar":
        """Set ``h = 0``; the denominator must not vanish there."""
        hi = len(self.ctx.symbols) - 1
        num = _drop_var(self.num, hi)
        den = _drop_var(self.den, hi)
        if not den:
            raise ScalarError(f"{self} is singular at h = 0")
        return _canonical(self.ctx, num, den)

    def split_monomials(self, names: Iterable[str]) -> dict[tuple[int, ...], "Scalar"]:
        """Group the numerator by exponents of ``names``.

        Returns ``{exponents: remainder}`` with
        ``self == sum(remainder * prod(name_i ** e_i))``.
        """
        idx = [self.ctx._index[n] for n in names]
        groups: dict = {}
        for mon, c in self.num.items():
            key = tuple(mon[i] for i in idx)
            m = list(mon)
            for i in idx:
                m[i] = 0
            groups.setdefault(key, {})[tuple(m)] = c
        ring = self.ctx.ring
        out = {}
        for key, terms in groups.items():
            num = ring(terms)
            if self.den == ring.one:
                out[key] = Scalar._raw(self.ctx, num, ring.one)
            else:
                out[key] = _canonical(self.ctx, num, self.den)
        return out

    # -- printing -------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def is_monomial_text(self) -> bool:
        """True when the text form needs no parentheses as a factor."""
        return len(self.num) <= 1 and len(self.den) <= 1


def _drop_var(p, i):
    ring = p.ring
    return ring({m: c for m, c in p.items() if m[i] == 0})


def _term_key(mon):
    # ascending total degree, then larger exponents of earlier symbols first
    return (sum(mon), tuple(-e for e in mon))


def format_poly(p, symbols, divisor: int = 1) -> str:
    if not p:
        return "0"
    parts = []
    for mon, c in sorted(p.items(), key=lambda t: _term_key(t[0])):
        c = Fraction(int(c), divisor)
        factors = []
        for name, e in zip(symbols, mon):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            term = str(c)
        elif c == 1:
            term = mono
        elif c == -1:
            term = "-" + mono
        else:
            term = f"{c}*{mono}"
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def format_scalar(s: Scalar) -> str:
    syms = s.ctx.symbols
    if s.den.is_ground:
        # an integer denominator is spread over the coefficients
        return format_poly(s.num, syms, int(s.den.LC))
    num = format_poly(s.num, syms)
    den = format_poly(s.den, syms)
    if len(s.num) > 1:
        num = f"({num})"
    if not s.den.is_ground:
        (mon, c), *rest = s.den.items()
        if rest or c != 1 or sum(1 for e in mon if e) > 1:
            den = f"({den})"
    return f"{num}/{den}"


# -- shipped contexts ----------------------------------------------------------


@lru_cache(maxsize=None)
def polar_context() -> ScalarContext:
    """Coordinates ``r, theta``; ``c = cos(theta)``, ``s = sin(theta)``."""
    return ScalarContext(
        coordinates=("r", "theta"),
        functions={"c": {"theta": "-s"}, "s": {"theta": "c"}},
        relations=[("s^2", "1 - c^2")],
        name="polar",
    )


@lru_cache(maxsize=None)
def plain_context(coordinates: tuple[str, ...] = ()) -> ScalarContext:
    return ScalarContext(coordinates)


def scalar_arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Field operation by name: ``add``, ``sub``, ``mul`` or ``div``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ScalarError(f"unknown scalar operation {op!r}")


def scalar_diff(a: Scalar, coord: str) -> Scalar:
    return a.diff(coord)


def reduce_relations(a: Scalar) -> Scalar:
    return a.reduce()


def multi_indices(bounds: Iterable[int]):
    """All exponent vectors componentwise below ``bounds`` (inclusive)."""
    return iproduct(*(range(b + 1) for b in bounds))
