"""Noncommutative polynomials in normal form.

Three kinds of algebra are supported:

``free``
    no relations; every word is normal.
``constant_commutator``
    relations ``[u_i, u_j] = h c_ij`` with a constant antisymmetric table;
    a word is normal when its generator indices are non-decreasing.
``weyl_diffop``
    differential-operator form of the Weyl algebra: momenta ``p_i`` act on
    coefficient scalars through ``p_i f = f p_i + h df/dq_i``.  Coordinates
    live inside the scalar coefficients; words hold momenta only, in
    non-decreasing order, so coefficients always stand to the left.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from . import kernels, syntax
from .scalars import Scalar, ScalarContext, integer_exponent, plain_context

MODES = ("free", "constant_commutator", "weyl_diffop")


class AlgebraError(ValueError):
    """Invalid algebra declaration or mismatched operands."""


class AlgebraSpec:
    """Generators and commutation data of an algebra."""

    def __init__(
        self,
        mode: str,
        generators: Sequence[str],
        ctx: ScalarContext | None = None,
        c_table=None,
        weyl_pairs: Iterable[tuple[int, int]] = (),
    ):
        if mode not in MODES:
            raise AlgebraError(f"unknown algebra mode {mode!r}")
        self.mode = mode
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise AlgebraError("duplicate generator names")
        for g in self.generators:
            if not g.isidentifier() or g == "h":
                raise AlgebraError(f"invalid generator name {g!r}")
        self.ctx = ctx if ctx is not None else plain_context(())
        self.weyl_pairs = tuple(tuple(p) for p in weyl_pairs)
        self._index = {g: i for i, g in enumerate(self.generators)}
        m = len(self.generators)

        self.c_table = None
        if mode == "constant_commutator":
            if c_table is None:
                raise AlgebraError("constant-commutator algebras need a c table")
            table = tuple(tuple(Fraction(x) for x in row) for row in c_table)
            if len(table) != m or any(len(row) != m for row in table):
                raise AlgebraError(f"c table must be {m}x{m}")
            for i in range(m):
                for j in range(m):
                    if table[i][j] != -table[j][i]:
                        raise AlgebraError(f"c table is not antisymmetric at ({i}, {j})")
            self.c_table = table
            scale = 1
            for row in table:
                for x in row:
                    scale = lcm(scale, x.denominator)
            self._scale = scale
            self._int_table = tuple(tuple(int(x * scale) for x in row) for row in table)
            for g in self.generators:
                if self.ctx.has_symbol(g):
                    raise AlgebraError(f"generator {g!r} clashes with a scalar symbol")
        elif mode == "free":
            for g in self.generators:
                if self.ctx.has_symbol(g):
                    raise AlgebraError(f"generator {g!r} clashes with a scalar symbol")
        else:
            n = len(self.ctx.coordinates)
            if self.generators[:n] != self.ctx.coordinates or m != 2 * n:
                raise AlgebraError("weyl algebras list the context coordinates followed by one momentum each")
            self.weyl_pairs = tuple((i, n + i) for i in range(n))
            for g in self.generators[n:]:
                if self.ctx.has_symbol(g):
                    raise AlgebraError(f"momentum {g!r} clashes with a scalar symbol")
        for qi, pi in self.weyl_pairs:
            if not (0 <= qi < m and 0 <= pi < m):
                raise AlgebraError("weyl pair index out of range")

        self._key = (self.mode, self.generators, self.ctx, self.c_table, self.weyl_pairs)
        self._word_cache: dict = {}
        self._h_powers = [self.ctx.one]
        self._symbol_ctx = None

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return self is other or (isinstance(other, AlgebraSpec) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"AlgebraSpec({self.mode!r}, {list(self.generators)})"

    # -- generator bookkeeping --------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, g) -> int:
        if isinstance(g, int) and not isinstance(g, bool):
            if 0 <= g < len(self.generators):
                return g
            raise AlgebraError(f"generator index {g} out of range")
        try:
            return self._index[g]
        except KeyError:
            raise AlgebraError(f"unknown generator {g!r}") from None

    @property
    def is_weyl(self) -> bool:
        return bool(self.weyl_pairs)

    @property
    def n_pairs(self) -> int:
        return len(self.weyl_pairs)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.weyl_pairs)

    @property
    def momenta(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.weyl_pairs)

    def require_weyl(self):
        if not self.is_weyl:
            raise AlgebraError("operation needs a Weyl algebra (paired q and p generators)")

    def h_power(self, k: int) -> Scalar:
        hp = self._h_powers
        while len(hp) <= k:
            hp.append(hp[-1] * self.ctx.h)
        return hp[k]

    # -- elements -----------------------------------------------------------------

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): self.ctx.one})

    def scalar(self, value) -> "NCPoly":
        s = self.ctx.coerce(value)
        return NCPoly(self, {(): s} if s else {})

    def gen(self, g) -> "NCPoly":
        i = self.index(g)
        if self.mode == "weyl_diffop" and i < self.n_pairs:
            return self.scalar(self.ctx.symbol(self.generators[i]))
        return NCPoly(self, {(i,): self.ctx.one})

    def gens(self) -> list["NCPoly"]:
        return [self.gen(i) for i in range(self.ngens)]

    def coerce(self, value) -> "NCPoly":
        if isinstance(value, NCPoly):
            if value.spec is self or value.spec == self:
                return value
            raise AlgebraError("element belongs to a different algebra")
        return self.scalar(value)

    def free(self) -> "AlgebraSpec":
        """Free algebra on the same generators and scalars."""
        if self.mode == "weyl_diffop":
            raise AlgebraError("the differential-operator Weyl form has no free cover; use the constant form")
        return AlgebraSpec("free", self.generators, self.ctx)

    def parse(self, text: str) -> "NCPoly":
        """Parse ``p^2*q - [p, q]``-style text into a normalized element."""
        return self.evaluate(syntax.parse_expr(text))

    def evaluate(self, expr) -> "NCPoly":
        if isinstance(expr, syntax.Num):
            return self.scalar(expr.value)
        if isinstance(expr, syntax.Name):
            if expr.id in self._index:
                return self.gen(expr.id)
            if self.ctx.has_symbol(expr.id):
                return self.scalar(self.ctx.symbol(expr.id))
            raise AlgebraError(f"unknown identifier {expr.id!r}")
        if isinstance(expr, syntax.Neg):
            return -self.evaluate(expr.operand)
        if isinstance(expr, syntax.Bracket) and expr.kind == "comm":
            return commutator(self.evaluate(expr.left), self.evaluate(expr.right))
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
        raise AlgebraError(f"unsupported expression {syntax.unparse(expr)}")

    # -- normal ordering ------------------------------------------------------

    def normal_word(self, word: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Scalar], ...]:
        """Normal form of a single raw word (constant mode), cached."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        if all(word[i] <= word[i + 1] for i in range(len(word) - 1)):
            res = ((word, self.ctx.one),)
        else:
            raw = kernels.normal_order(word, self._int_table)
            acc = {}
            for (w, k), c in raw.items():
                coef = self.h_power(k) * Fraction(c, self._scale ** k)
                acc[w] = acc[w] + coef if w in acc else coef
            res = tuple((w, c) for w, c in acc.items() if c)
        self._word_cache[word] = res
        return res

    def symbol_context(self) -> ScalarContext:
        """Commutative context whose coordinates are the images of the generators."""
        if self._symbol_ctx is None:
            if self.mode == "weyl_diffop":
                extra = self.generators[self.n_pairs:]
            else:
                extra = self.generators
            self._symbol_ctx = self.ctx.extend(extra, name=f"symbols({','.join(self.generators)})")
        return self._symbol_ctx


# -- constructors -------------------------------------------------------------------


def free_algebra(names: Sequence[str], ctx: ScalarContext | None = None) -> AlgebraSpec:
    return AlgebraSpec("free", names, ctx)


def constant_algebra(names: Sequence[str], c_table, ctx: ScalarContext | None = None, weyl_pairs=()) -> AlgebraSpec:
    return AlgebraSpec("constant_commutator", names, ctx, c_table=c_table, weyl_pairs=weyl_pairs)


def default_coordinates(n: int) -> tuple[str, ...]:
    return ("q",) if n == 1 else tuple(f"q{i + 1}" for i in range(n))


def momentum_name(coord: str) -> str:
    if coord.startswith("q") and (coord == "q" or coord[1:].isdigit()):
        return "p" + coord[1:]
    return "p_" + coord


def weyl_algebra(
    n: int | None = None,
    *,
    ctx: ScalarContext | None = None,
    momenta: Sequence[str] | None = None,
    representation: str = "diffop",
) -> AlgebraSpec:
    """The h-scaled Weyl algebra ``[p_i, q_j] = h delta_ij``.

    ``representation="diffop"`` gives the ``weyl`` mode over ``ctx`` (default:
    polynomial context in ``q`` or ``q1..qn``); ``"constant"`` gives the same
    algebra as a constant-commutator algebra on ``q..., p...``.
    """
    if ctx is None:
        if n is None:
            raise AlgebraError("give n or a scalar context")
        coords = default_coordinates(n)
        base = plain_context(coords)
    else:
        coords = ctx.coordinates
        base = ctx
        if n is not None and n != len(coords):
            raise AlgebraError("n does not match the number of context coordinates")
    n = len(coords)
    momenta = tuple(momenta) if momenta is not None else tuple(momentum_name(c) for c in coords)
    if len(momenta) != n:
        raise AlgebraError("one momentum per coordinate is required")
    if representation == "diffop":
        return AlgebraSpec("weyl_diffop", coords + momenta, base)
    if representation == "constant":
        table = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            table[n + i][i] = 1
            table[i][n + i] = -1
        scalars = plain_context(()) if ctx is None else _strip_coordinates(base)
        return AlgebraSpec("constant_commutator", coords + momenta, scalars, c_table=table, weyl_pairs=[(i, n + i) for i in range(n)])
    raise AlgebraError(f"unknown representation {representation!r}")


def _strip_coordinates(ctx: ScalarContext) -> ScalarContext:
    if ctx.function_names or ctx.relations:
        raise AlgebraError("the constant representation needs polynomial coefficients (no function symbols)")
    return plain_context(())


# -- elements ---------------------------------------------------------------------


class NCPoly:
    """Finite map from normal words to nonzero scalars."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict):
        self.spec = spec
        self.terms = terms

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if other.spec is not self.spec and other.spec != self.spec:
                raise AlgebraError("operands belong to different algebras")
            return other
        if isinstance(other, Scalar) or (isinstance(other, (int, Rational)) and not isinstance(other, bool)):
            return self.spec.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in o.terms.items():
            _accumulate(terms, w, c)
        return NCPoly(self.spec, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.spec, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not isinstance(other, NCPoly) and self.spec.mode != "weyl_diffop":
            return self.scale(o.terms.get((), self.spec.ctx.zero))
        return nc_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # scalars on the left are coefficients in every mode
        return self.scale(o.terms.get((), self.spec.ctx.zero))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.is_scalar() or o.is_zero():
            raise AlgebraError("division only by a nonzero scalar")
        return self * o.scalar_value().inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_scalar():
                raise AlgebraError("negative powers only for scalars")
            return self.spec.scalar(self.scalar_value() ** n)
        result = self.spec.one()
        for _ in range(n):
            result = nc_mul(result, self)
        return result

    def scale(self, s) -> "NCPoly":
        """Multiply every coefficient by the scalar ``s`` (left multiplication)."""
        s = self.spec.ctx.coerce(s)
        if not s:
            return self.spec.zero()
        terms = {}
        for w, c in self.terms.items():
            v = c * s
            if v:
                terms[w] = v
        return NCPoly(self.spec, terms)

    # -- inspection -------------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(w == () for w in self.terms)

    def scalar_value(self) -> Scalar:
        if not self.is_scalar():
            raise AlgebraError(f"{self} is not a scalar")
        return self.terms.get((), self.spec.ctx.zero)

    def coefficient(self, word) -> Scalar:
        word = tuple(self.spec.index(g) for g in word)
        return self.terms.get(word, self.spec.ctx.zero)

    def degree(self) -> int:
        """Word length plus (weyl mode) coordinate degree of coefficients; -1 for zero."""
        if not self.terms:
            return -1
        if self.spec.mode != "weyl_diffop":
            return max(len(w) for w in self.terms)
        coords = self.spec.ctx.coordinates
        best = -1
        for w, c in self.terms.items():
            for exps in c.split_monomials(coords):
                best = max(best, len(w) + sum(exps))
        return best

    def map_coefficients(self, fn) -> "NCPoly":
        terms = {}
        for w, c in self.terms.items():
            v = fn(c)
            if v:
                terms[w] = v
        return NCPoly(self.spec, terms)

    # -- printing -------------------------------------------------------------

    def display_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """``(full word, scalar part)`` pairs in printing order.

        In weyl mode polynomial coordinate dependence is shown as a word
        prefix (rational coefficients print whole), so ``4*h*q`` on ``p`` prints as ``4*h q p`` in both Weyl
        representations.
        """
        spec = self.spec
        items = []
        if spec.mode == "weyl_diffop":
            coords = spec.ctx.coordinates
            for w, c in self.terms.items():
                if not c.den.is_ground:
                    items.append((w, c))
                    continue
                for exps, rest in c.split_monomials(coords).items():
                    qword = tuple(i for i, e in enumerate(exps) for _ in range(e))
                    items.append((qword + w, rest))
        else:
            items = list(self.terms.items())
        items.sort(key=lambda t: (-len(t[0]), t[0]))
        return items

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.spec.generators
        parts = []
        for word, s in self.display_terms():
            text_word = " ".join(names[i] for i in word)
            if not word:
                text = str(s)
            elif s == 1:
                text = text_word
            elif s == -1:
                text = "-" + text_word
            elif s.is_monomial_text():
                text = f"{s} {text_word}"
            else:
                text = f"({s}) {text_word}"
            parts.append(text)
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"NCPoly({str(self)!r})"

    def to_json(self) -> list[dict]:
        names = self.spec.generators
        return [{"coeff": str(s), "word": [names[i] for i in w]} for w, s in self.display_terms()]

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _accumulate(terms: dict, word, coeff):
    if word in terms:
        v = terms[word] + coeff
        if v:
            terms[word] = v
        else:
            del terms[word]
    elif coeff:
        terms[word] = coeff


# -- core operations -------------------------------------------------------------


def _weyl_exps(spec: AlgebraSpec, word) -> tuple[int, ...]:
    n = spec.n_pairs
    exps = [0] * n
    for g in word:
        exps[g - n] += 1
    return tuple(exps)


def _weyl_word(spec: AlgebraSpec, exps) -> tuple[int, ...]:
    n = spec.n_pairs
    return tuple(n + i for i, e in enumerate(exps) for _ in range(e))


_LEIBNIZ_CACHE: dict = {}


def _leibniz(exps):
    terms = _LEIBNIZ_CACHE.get(exps)
    if terms is None:
        terms = _LEIBNIZ_CACHE[exps] = kernels.leibniz_terms(exps)
    return terms


def coefficient_derivative(spec: AlgebraSpec, f: Scalar, sigma, memo: dict) -> Scalar:
    """``d^sigma f / dq^sigma`` with memoisation keyed on ``(id(f), sigma)``."""
    key = (id(f), sigma)
    got = memo.get(key)
    if got is not None:
        return got
    if not any(sigma):
        res = f
    else:
        i = next(k for k, e in enumerate(sigma) if e)
        lower = sigma[:i] + (sigma[i] - 1,) + sigma[i + 1:]
        res = coefficient_derivative(spec, f, lower, memo).diff(spec.ctx.coordinates[i])
    memo[key] = res
    return res


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Normalized product ``a * b``."""
    spec = a.spec
    if b.spec is not spec and b.spec != spec:
        raise AlgebraError("operands belong to different algebras")
    terms: dict = {}
    if spec.mode == "free":
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                _accumulate(terms, w1 + w2, c1 * c2)
    elif spec.mode == "constant_commutator":
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                c = c1 * c2
                if not w1 or not w2 or w1[-1] <= w2[0]:
                    _accumulate(terms, w1 + w2, c)
                    continue
                for w, s in spec.normal_word(w1 + w2):
                    _accumulate(terms, w, c * s)
    else:
        memo: dict = {}
        for w1, f in a.terms.items():
            e1 = _weyl_exps(spec, w1)
            lt = _leibniz(e1)
            for w2, g in b.terms.items():
                e2 = _weyl_exps(spec, w2)
                for sigma, binom in lt:
                    dg = coefficient_derivative(spec, g, sigma, memo)
                    if not dg:
                        continue
                    k = sum(sigma)
                    coeff = f * dg
                    if k:
                        coeff = coeff * (spec.h_power(k) * binom)
                    word = _weyl_word(spec, tuple(x - s + y for x, s, y in zip(e1, sigma, e2)))
                    _accumulate(terms, word, coeff)
    return NCPoly(spec, terms)


def normalize(raw_terms, spec: AlgebraSpec) -> NCPoly:
    """Normal form of a raw term list ``[(coeff, factors), ...]``.

    ``factors`` is a sequence of generator names/indices; in weyl mode it may
    also contain coordinate generators and scalars, which are multiplied in
    at their position.
    """
    ctx = spec.ctx
    terms: dict = {}
    result = NCPoly(spec, terms)
    for coeff, factors in raw_terms:
        coeff = ctx.coerce(coeff)
        if spec.mode == "weyl_diffop":
            acc = spec.scalar(coeff)
            for f in factors:
                elem = spec.scalar(f) if isinstance(f, Scalar) else spec.gen(f)
                acc = nc_mul(acc, elem)
            for w, c in acc.terms.items():
                _accumulate(terms, w, c)
            continue
        word = []
        for f in factors:
            if isinstance(f, Scalar):
                coeff = coeff * ctx.coerce(f)
            else:
                word.append(spec.index(f))
        word = tuple(word)
        if spec.mode == "free":
            _accumulate(terms, word, coeff)
        else:
            for w, s in spec.normal_word(word):
                _accumulate(terms, w, coeff * s)
    return result


def normalize_randomized(raw_terms, spec: AlgebraSpec, rng) -> NCPoly:
    """Constant-mode normal form that rewrites a randomly chosen descent at each step.

    Shares no code path with :func:`normalize` beyond the commutator table, so
    agreement of the two is a confluence check.
    """
    if spec.mode != "constant_commutator":
        raise AlgebraError("randomized rewriting applies to constant-commutator algebras")
    ctx = spec.ctx
    terms: dict = {}
    for coeff, factors in raw_terms:
        coeff = ctx.coerce(coeff)
        word = tuple(spec.index(f) for f in factors)
        for (w, k), c in kernels.normal_order_random(word, spec._int_table, rng).items():
            _accumulate(terms, w, coeff * spec.h_power(k) * Fraction(c, spec._scale ** k))
    return NCPoly(spec, terms)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """``[a, b] = a b - b a``."""
    return nc_mul(a, b) - nc_mul(b, a)


def to_weyl_diffop(x: NCPoly, target: AlgebraSpec) -> NCPoly:
    """Embed an element of the constant-form Weyl algebra into the weyl form."""
    src = x.spec
    if src.mode != "constant_commutator" or not src.is_weyl or target.mode != "weyl_diffop":
        raise AlgebraError("embedding goes from the constant Weyl form to the weyl form")
    if src.n_pairs != target.n_pairs:
        raise AlgebraError("different numbers of degrees of freedom")
    tctx = target.ctx
    qsyms = [tctx.symbol(c) for c in tctx.coordinates]
    qpos = {q: k for k, q in enumerate(src.positions)}
    ppos = {p: k for k, p in enumerate(src.momenta)}
    terms: dict = {}
    for w, c in x.terms.items():
        coeff = c.to_context(tctx)
        pword = []
        for g in w:
            if g in qpos:
                coeff = coeff * qsyms[qpos[g]]
            else:
                pword.append(target.n_pairs + ppos[g])
        _accumulate(terms, tuple(sorted(pword)), coeff)
    return NCPoly(target, terms)


def project(x: NCPoly, spec: AlgebraSpec) -> NCPoly:
    """Image of a free-algebra element in ``spec`` (same generator names)."""
    if x.spec.mode != "free":
        raise AlgebraError("projection starts from a free algebra")
    if x.spec.generators != spec.generators:
        raise AlgebraError("projection needs identical generator lists")
    return normalize([(c, w) for w, c in x.terms.items()], spec)


def word_element(spec: AlgebraSpec, word, coeff=None) -> NCPoly:
    """Element ``coeff * u_{w1} ... u_{ws}`` for a word that is already normal.

    In weyl_diffop mode the word may start with coordinate indices, which are
    folded into the coefficient.
    """
    coeff = spec.ctx.one if coeff is None else spec.ctx.coerce(coeff)
    if spec.mode == "weyl_diffop":
        n = spec.n_pairs
        names = spec.ctx.coordinates
        for g in word:
            if g < n:
                coeff = coeff * spec.ctx.symbol(names[g])
        word = tuple(g for g in word if g >= n)
    return NCPoly(spec, {tuple(word): coeff} if coeff else {})
