"""Commutators against Poisson brackets.

Symbols are commutative scalars in ``spec.symbol_context()``, where every
momentum (and, for the constant form of the Weyl algebra, every coordinate)
is an ordinary symbol.  Normal quantization places coordinates left of
momenta.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import factorial, lcm
from typing import Sequence

from .calculus import partial, partial_multi
from .ncalg import AlgebraError, AlgebraSpec, NCPoly, _accumulate, commutator, nc_mul
from .scalars import Scalar, multi_indices


class BracketError(AlgebraError):
    pass


# -- symbols ------------------------------------------------------------------------


def _symbol_names(spec: AlgebraSpec) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """(coordinate names, momentum names) as symbols."""
    spec.require_weyl()
    g = spec.generators
    return tuple(g[q] for q in spec.positions), tuple(g[p] for p in spec.momenta)


def _word_symbols(spec: AlgebraSpec) -> list[str]:
    """Symbol name for each generator that may appear in a word."""
    return list(spec.generators)


def to_symbol(H: NCPoly) -> Scalar:
    """Commutative image of the normal form, keeping ``h``."""
    spec = H.spec
    sctx = spec.symbol_context()
    names = _word_symbols(spec)
    syms = [sctx.symbol(n) if sctx.has_symbol(n) else None for n in names]
    total = sctx.zero
    for w, c in H.terms.items():
        term = c.to_context(sctx)
        for g in w:
            term = term * syms[g]
        total = total + term
    return total


def smbl(H: NCPoly) -> Scalar:
    """Symbol of ``H``: commutative image of the normal form at ``h = 0``."""
    s = to_symbol(H)
    if s.depends_on("h") and s.den.degree(len(s.ctx.symbols) - 1) > 0:
        raise BracketError("the symbol needs coefficients polynomial in h")
    return s.at_h_zero()


def normal_quantize(a: Scalar, spec: AlgebraSpec) -> NCPoly:
    """Normal-ordered element whose commutative image is ``a``."""
    sctx = spec.symbol_context()
    a = sctx.coerce(a) if a.ctx == sctx else a.to_context(sctx)
    if spec.mode == "weyl_diffop":
        letters = [spec.generators[p] for p in spec.momenta]
        letter_index = list(spec.momenta)
    else:
        letters = list(spec.generators)
        letter_index = list(range(spec.ngens))
    for name in letters:
        if a.den.degree(sctx._index[name]) > 0:
            raise BracketError(f"symbol is not polynomial in {name}")
    terms: dict = {}
    for exps, rest in a.split_monomials(letters).items():
        word = tuple(letter_index[i] for i, e in enumerate(exps) for _ in range(e))
        coeff = rest.to_context(spec.ctx)
        _accumulate(terms, word, coeff)
    return NCPoly(spec, terms)


def poisson(a: Scalar, b: Scalar, spec: AlgebraSpec) -> Scalar:
    """``{a, b} = sum_i da/dp_i db/dq_i - da/dq_i db/dp_i``."""
    qs, ps = _symbol_names(spec)
    sctx = spec.symbol_context()
    a, b = sctx.coerce(a), sctx.coerce(b)
    total = sctx.zero
    for q, p in zip(qs, ps):
        total = total + a.diff(p) * b.diff(q) - a.diff(q) * b.diff(p)
    return total


def star_normal(a: Scalar, b: Scalar, spec: AlgebraSpec) -> Scalar:
    """Normal star product ``sum_sigma h^|sigma|/sigma! d_p^sigma a d_q^sigma b``.

    Characterized by ``normal_quantize(a * b) = normal_quantize(a) normal_quantize(b)``.
    """
    qs, ps = _symbol_names(spec)
    sctx = spec.symbol_context()
    a, b = sctx.coerce(a), sctx.coerce(b)
    bounds = []
    for p in ps:
        if a.den.degree(sctx._index[p]) > 0:
            raise BracketError(f"left factor is not polynomial in {p}")
        bounds.append(max(a.degree(p), 0))
    total = sctx.zero
    for sigma in multi_indices(bounds):
        da = a
        db = b
        weight = 1
        for p, q, e in zip(ps, qs, sigma):
            for _ in range(e):
                da = da.diff(p)
                db = db.diff(q)
            weight *= factorial(e)
        if da and db:
            total = total + da * db * sctx.h ** sum(sigma) / weight
    return total


# -- theta coefficients and the constant-commutator expansion -------------------------


class ThetaTable:
    """Coefficients of ``lambda^sigma mu^sigma'`` in ``(sum c_ij lambda_i mu_j)^s``."""

    def __init__(self, c, s_max: int):
        table = [[Fraction(x) for x in row] for row in c]
        m = len(table)
        if any(len(row) != m for row in table):
            raise BracketError("c must be square")
        for i in range(m):
            for j in range(m):
                if table[i][j] != -table[j][i]:
                    raise BracketError("c must be antisymmetric")
        if s_max < 0:
            raise BracketError("s_max must be non-negative")
        self.m = m
        self.c = table
        self.s_max = s_max
        self.entries: dict = {}
        zero = (0,) * m
        base = {}
        for i in range(m):
            for j in range(m):
                if table[i][j]:
                    key = (_unit(m, i), _unit(m, j))
                    base[key] = base.get(key, 0) + table[i][j]
        power = {(zero, zero): Fraction(1)}
        for s in range(1, s_max + 1):
            nxt: dict = {}
            for (s1, t1), v1 in power.items():
                for (s2, t2), v2 in base.items():
                    key = (_add(s1, s2), _add(t1, t2))
                    val = nxt.get(key, 0) + v1 * v2
                    if val:
                        nxt[key] = val
                    else:
                        nxt.pop(key, None)
            power = nxt
            for key, v in power.items():
                self.entries[key] = v

    def __getitem__(self, key) -> Fraction:
        sigma, sigma2 = (tuple(k) for k in key)
        return self.entries.get((sigma, sigma2), Fraction(0))

    def at_order(self, s: int):
        return sorted((k, v) for k, v in self.entries.items() if sum(k[0]) == s)


def _unit(m, i):
    return tuple(1 if k == i else 0 for k in range(m))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def theta_table(c, s_max: int) -> ThetaTable:
    return ThetaTable(c, s_max)


def _word_degree(H: NCPoly) -> int:
    return max((len(w) for w in H.terms), default=0)


def bracket_expansion_theta(H: NCPoly, F: NCPoly) -> NCPoly:
    """``sum_s (-h)^(s-1)/s! sum theta d^sigma H d^sigma' F``, equal to ``h^-1 [H, F]``."""
    spec = H.spec
    if spec.mode != "constant_commutator":
        raise BracketError("the theta expansion needs a constant-commutator algebra")
    if F.spec != spec:
        raise BracketError("operands belong to different algebras")
    s_max = min(_word_degree(H), _word_degree(F))
    table = ThetaTable(spec.c_table, s_max)
    h = spec.ctx.h
    total = spec.zero()
    dH: dict = {}
    dF: dict = {}
    for s in range(1, s_max + 1):
        weight = (-h) ** (s - 1) / factorial(s)
        for (sigma, sigma2), theta in table.at_order(s):
            if sigma not in dH:
                dH[sigma] = partial_multi(H, sigma)
            if sigma2 not in dF:
                dF[sigma2] = partial_multi(F, sigma2)
            if dH[sigma] and dF[sigma2]:
                total = total + nc_mul(dH[sigma], dF[sigma2]).scale(weight * theta)
    return total


# -- paired-operator expansion in the Weyl algebra -------------------------------------


def _p_degree(H: NCPoly) -> int:
    spec = H.spec
    moms = set(spec.momenta)
    return max((sum(1 for g in w if g in moms) for w in H.terms), default=0)


def _multinomial(sigma) -> int:
    out = factorial(sum(sigma))
    for e in sigma:
        out //= factorial(e)
    return out


def _pair_multi(spec: AlgebraSpec, sigma, which: str):
    """Generator multi-index differentiating by momenta (``p``) or coordinates (``q``)."""
    out = [0] * spec.ngens
    for (qi, pi), e in zip(spec.weyl_pairs, sigma):
        out[pi if which == "p" else qi] = e
    return out


def pair_operator_power(H: NCPoly, F: NCPoly, s: int) -> NCPoly:
    """``(O_HF)^s (HF)``: sum over index sequences of ``d^s H/dp... * d^s F/dq...``.

    Sequences with the same multiset give the same term, so they are counted
    with a multinomial weight.
    """
    spec = H.spec
    spec.require_weyl()
    n = spec.n_pairs
    total = spec.zero()
    for sigma in multi_indices([s] * n):
        if sum(sigma) != s:
            continue
        dh = partial_multi(H, _pair_multi(spec, sigma, "p"))
        if not dh:
            continue
        df = partial_multi(F, _pair_multi(spec, sigma, "q"))
        if not df:
            continue
        total = total + nc_mul(dh, df).scale(_multinomial(sigma))
    return total


def pair_operator_power_sequences(H: NCPoly, F: NCPoly, s: int) -> NCPoly:
    """Literal sum over all ``n^s`` index sequences (slow; used as a cross-check)."""
    spec = H.spec
    spec.require_weyl()
    total = spec.zero()
    for seq in iproduct(range(spec.n_pairs), repeat=s):
        dh, df = H, F
        for i in seq:
            qi, pi = spec.weyl_pairs[i]
            dh = partial(dh, pi)
            df = partial(df, qi)
        total = total + nc_mul(dh, df)
    return total


def bracket_expansion_pair(H: NCPoly, F: NCPoly) -> NCPoly:
    """``sum_s (-h)^(s-1)/s! ((O_HF)^s(HF) - (O_FH)^s(FH))``, equal to ``h^-1 [H, F]``."""
    spec = H.spec
    spec.require_weyl()
    if F.spec != spec:
        raise BracketError("operands belong to different algebras")
    h = spec.ctx.h
    total = spec.zero()
    for s in range(1, max(_p_degree(H), _p_degree(F)) + 1):
        piece = pair_operator_power(H, F, s) - pair_operator_power(F, H, s)
        if piece:
            total = total + piece.scale((-h) ** (s - 1) / factorial(s))
    return total


def scaled_commutator(H: NCPoly, F: NCPoly) -> NCPoly:
    """``h^-1 [H, F]``."""
    return commutator(H, F).scale(H.spec.ctx.h.inverse())


def symmetric_form(H: NCPoly, F: NCPoly) -> NCPoly:
    """``sum_{s>=0} (-h)^s/s! (O_HF)^s (HF)``."""
    spec = H.spec
    spec.require_weyl()
    h = spec.ctx.h
    total = nc_mul(H, F)
    for s in range(1, _p_degree(H) + 1):
        piece = pair_operator_power(H, F, s)
        if piece:
            total = total + piece.scale((-h) ** s / factorial(s))
    return total


# -- dagger and residues --------------------------------------------------------------


def dagger(H: NCPoly) -> NCPoly:
    """Antiinvolution reversing products, fixing ``q`` and ``h``, negating ``p``."""
    spec = H.spec
    spec.require_weyl()
    moms = set(spec.momenta)
    total = spec.zero()
    for w, c in H.terms.items():
        sign = -1 if sum(1 for g in w if g in moms) % 2 else 1
        if spec.mode == "weyl_diffop":
            # (c p^a)^dagger = (-1)^|a| p^a c
            piece = nc_mul(NCPoly(spec, {w: spec.ctx.one}), spec.scalar(c))
        else:
            piece = nc_mul(spec.scalar(c), _raw_word(spec, tuple(reversed(w))))
        for word, v in piece.terms.items():
            _accumulate(total.terms, word, v * sign)
    return total


def _raw_word(spec: AlgebraSpec, word) -> NCPoly:
    out = spec.one()
    for g in word:
        out = nc_mul(out, spec.gen(g))
    return out


def res(H: NCPoly) -> Scalar:
    """Momentum-free part of the normal form, as a symbol."""
    spec = H.spec
    spec.require_weyl()
    moms = set(spec.momenta)
    keep = NCPoly(spec, {w: c for w, c in H.terms.items() if not any(g in moms for g in w)})
    return to_symbol(keep)


def res_form(H: NCPoly, F: NCPoly) -> Scalar:
    """``Res(H F^dagger)``."""
    return res(nc_mul(H, dagger(F)))


def divergence_witness(a: Scalar, b: Scalar, coordinates: Sequence[str]) -> list[Scalar]:
    """``g_1..g_N`` with ``a - b = sum_i dg_i/dq_i``, integrating everything in ``q_1``."""
    ctx = a.ctx
    b = ctx.coerce(b) if b.ctx == ctx else b.to_context(ctx)
    if not coordinates:
        raise BracketError("need at least one coordinate")
    diff = a - b
    zeros = [ctx.zero] * (len(coordinates) - 1)
    if not diff:
        return [ctx.zero] + zeros
    q1 = coordinates[0]
    v = ctx._index[q1]
    if diff.den.degree(v) > 0:
        raise BracketError(f"difference is not polynomial in {q1}")
    terms = {}
    for mon, c in diff.num.items():
        m = list(mon)
        m[v] += 1
        terms[tuple(m)] = Fraction(int(c), m[v])
    lcm_den = 1
    for f in terms.values():
        lcm_den = lcm(lcm_den, f.denominator)
    num = ctx.ring({m: int(f * lcm_den) for m, f in terms.items()})
    g1 = ctx.make(num, diff.den * lcm_den)
    if g1.diff(q1) != diff:
        raise BracketError(f"difference has {q1}-dependence through function symbols; no witness constructed")
    return [g1] + zeros


def classical_limit_sides(H: NCPoly, F: NCPoly) -> tuple[Scalar, Scalar]:
    """``smbl(h^-1 [H, F])`` and ``{smbl H, smbl F}``."""
    return smbl(scaled_commutator(H, F)), poisson(smbl(H), smbl(F), H.spec)


__all__ = [
    "BracketError",
    "ThetaTable",
    "bracket_expansion_pair",
    "bracket_expansion_theta",
    "classical_limit_sides",
    "dagger",
    "divergence_witness",
    "normal_quantize",
    "pair_operator_power",
    "pair_operator_power_sequences",
    "poisson",
    "res",
    "res_form",
    "scaled_commutator",
    "smbl",
    "star_normal",
    "symmetric_form",
    "theta_table",
    "to_symbol",
]
