"""Noncommutative differential calculus on normal-form elements.

Partials delete one occurrence of a generator; operator-valued partials
insert an argument at that occurrence instead.  Both act on the canonical
representative, which Lemma-style ideal preservation makes well defined for
the plain partial.  Euler's identity is checked in its operator reading
``sum_k d~H/du_k (u_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .ncalg import AlgebraError, AlgebraSpec, NCPoly, _accumulate, commutator, nc_mul, word_element


class CalculusError(AlgebraError):
    pass


def _check_index(spec: AlgebraSpec, k) -> int:
    return spec.index(k)


def _full_terms(H: NCPoly, need_coordinate_free: bool):
    """``(full word, coefficient)`` pairs; q-monomials become word letters in weyl_diffop mode."""
    spec = H.spec
    if spec.mode != "weyl_diffop":
        return list(H.terms.items())
    out = H.display_terms()
    if need_coordinate_free:
        coords = spec.ctx.coordinates
        for _, rest in out:
            if any(rest.diff(c) for c in coords):
                raise CalculusError(
                    "inserting a non-scalar argument at a coordinate needs coefficients polynomial in the coordinates"
                )
    return out


def occurrences(H: NCPoly, k, coordinate_free: bool = True):
    """Yield ``(left, right)`` with ``H = sum left * u_k * right`` over all occurrences."""
    spec = H.spec
    k = _check_index(spec, k)
    one = spec.ctx.one
    if spec.mode == "weyl_diffop" and k >= spec.n_pairs:
        for w, c in H.terms.items():
            for t, g in enumerate(w):
                if g == k:
                    yield NCPoly(spec, {w[:t]: c}), NCPoly(spec, {w[t + 1:]: one})
        return
    for w, c in _full_terms(H, coordinate_free):
        for t, g in enumerate(w):
            if g == k:
                yield word_element(spec, w[:t], c), word_element(spec, w[t + 1:])


def partial(H: NCPoly, k) -> NCPoly:
    """``dH/du_k``: delete one occurrence of ``u_k``, summed over occurrences."""
    spec = H.spec
    k = _check_index(spec, k)
    terms: dict = {}
    if spec.mode == "weyl_diffop" and k < spec.n_pairs:
        coord = spec.ctx.coordinates[k]
        for w, c in H.terms.items():
            _accumulate(terms, w, c.diff(coord))
        return NCPoly(spec, terms)
    for w, c in H.terms.items():
        count = w.count(k)
        if count:
            t = w.index(k)
            # deleting any occurrence of a letter from a sorted word gives the same word
            if spec.mode != "free":
                _accumulate(terms, w[:t] + w[t + 1:], c * count)
            else:
                for t, g in enumerate(w):
                    if g == k:
                        _accumulate(terms, w[:t] + w[t + 1:], c)
    return NCPoly(spec, terms)


def op_partial(H: NCPoly, k, x: NCPoly) -> NCPoly:
    """``d~H/du_k (x)``: replace one occurrence of ``u_k`` by ``x``, summed."""
    spec = H.spec
    x = spec.coerce(x)
    k = _check_index(spec, k)
    if spec.mode == "weyl_diffop" and k < spec.n_pairs and x.is_scalar():
        # scalars commute with the coordinates, so insertion is x * dc/dq_k
        return partial(H, k).scale(x.scalar_value())
    total = spec.zero()
    terms = total.terms
    for left, right in occurrences(H, k):
        for w, c in nc_mul(nc_mul(left, x), right).terms.items():
            _accumulate(terms, w, c)
    return total


def partial_multi(H: NCPoly, sigma: Sequence[int], order: Sequence[int] | None = None) -> NCPoly:
    """Iterated partial ``d^|sigma| H / du^sigma``; ``order`` permutes the generator sequence."""
    spec = H.spec
    if len(sigma) != spec.ngens:
        raise CalculusError("multi-index needs one entry per generator")
    if any(e < 0 for e in sigma):
        raise CalculusError("multi-index entries must be non-negative")
    seq = order if order is not None else range(spec.ngens)
    out = H
    for k in seq:
        for _ in range(sigma[k]):
            if not out:
                return out
            out = partial(out, k)
    return out


# -- 1-forms and derivations ----------------------------------------------------------


class OneForm:
    """Finite sum of ``phi du_k psi`` with ``phi, psi`` normal words.

    Stored as ``{(left word, k, right word): coefficient}``, which is a
    canonical form for the bimodule element.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict | None = None):
        if spec.mode == "weyl_diffop":
            raise CalculusError("1-forms are defined for free and constant-commutator algebras")
        self.spec = spec
        self.terms = dict(terms or {})

    @classmethod
    def from_triples(cls, spec: AlgebraSpec, triples) -> "OneForm":
        form = cls(spec)
        for left, k, right in triples:
            form.add_triple(spec.coerce(left), spec.index(k), spec.coerce(right))
        return form

    def add_triple(self, left: NCPoly, k: int, right: NCPoly):
        for lw, lc in left.terms.items():
            for rw, rc in right.terms.items():
                _accumulate(self.terms, (lw, k, rw), lc * rc)

    def triples(self) -> list[tuple[NCPoly, int, NCPoly]]:
        one = self.spec.ctx.one
        return [
            (NCPoly(self.spec, {lw: c}), k, NCPoly(self.spec, {rw: one}))
            for (lw, k, rw), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0], t[0][2]))
        ]

    def __add__(self, other: "OneForm") -> "OneForm":
        out = OneForm(self.spec, self.terms)
        for key, c in other.terms.items():
            _accumulate(out.terms, key, c)
        return out

    def scale(self, s) -> "OneForm":
        s = self.spec.ctx.coerce(s)
        return OneForm(self.spec, {key: c * s for key, c in self.terms.items() if s})

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.spec == other.spec and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.spec.generators
        parts = []
        for left, k, right in self.triples():
            lw = " ".join(names[i] for i in next(iter(left.terms))) or "1"
            rw = " ".join(names[i] for i in next(iter(right.terms))) or "1"
            c = next(iter(left.terms.values()))
            coeff = "" if c == 1 else ("-" if c == -1 else (f"{c} " if c.is_monomial_text() else f"({c}) "))
            parts.append(f"{coeff}({lw}) d{names[k]} ({rw})")
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def differential(H: NCPoly) -> OneForm:
    """``dH = sum_k d~H/du_k (du_k)``."""
    form = OneForm(H.spec)
    for w, c in H.terms.items():
        for t, g in enumerate(w):
            _accumulate(form.terms, (w[:t], g, w[t + 1:]), c)
    return form


@dataclass
class Derivation:
    """A derivation given by the images of the generators."""

    spec: AlgebraSpec
    images: dict = field(default_factory=dict)

    def __post_init__(self):
        full = {}
        for k, v in self.images.items():
            full[self.spec.index(k)] = self.spec.coerce(v)
        for k in range(self.spec.ngens):
            full.setdefault(k, self.spec.zero())
        self.images = full

    def image(self, k) -> NCPoly:
        return self.images[self.spec.index(k)]


def pair(form: OneForm, X: Derivation) -> NCPoly:
    """``<sum phi du_k psi, X> = sum phi X(u_k) psi``."""
    spec = form.spec
    total = spec.zero()
    for (lw, k, rw), c in form.terms.items():
        piece = nc_mul(nc_mul(NCPoly(spec, {lw: c}), X.images[k]), NCPoly(spec, {rw: spec.ctx.one}))
        for w, v in piece.terms.items():
            _accumulate(total.terms, w, v)
    return total


def apply_derivation(X: Derivation, H: NCPoly) -> NCPoly:
    """``X(H) = sum_k d~H/du_k (X(u_k))``."""
    total = H.spec.zero()
    for k, img in X.images.items():
        if img:
            total = total + op_partial(H, k, img)
    return total


def radial(spec: AlgebraSpec) -> Derivation:
    """The derivation ``u_k -> u_k`` used by Euler's identity."""
    return Derivation(spec, {k: spec.gen(k) for k in range(spec.ngens)})


def euler_defect(H: NCPoly) -> NCPoly:
    """``sum_k d~H/du_k (u_k) - deg(H) H`` for homogeneous ``H`` (zero expected)."""
    spec = H.spec
    if spec.mode == "weyl_diffop":
        raise CalculusError("word degree is not defined for q-dependent coefficients; use the constant form")
    degrees = {len(w) for w in H.terms}
    if len(degrees) > 1:
        raise CalculusError("Euler's identity needs a homogeneous element")
    d = degrees.pop() if degrees else 0
    return apply_derivation(radial(spec), H) - H.scale(d)


def ad(F: NCPoly, H: NCPoly) -> NCPoly:
    """Inner derivation ``ad_F(H) = F H - H F``."""
    return commutator(F, H)


def ad_via_partials(i, H: NCPoly) -> NCPoly:
    """``sum_k h c_ik dH/du_k``, the partial-derivative form of ``ad_{u_i}``."""
    spec = H.spec
    if spec.mode != "constant_commutator":
        raise CalculusError("needs a constant-commutator algebra")
    i = spec.index(i)
    total = spec.zero()
    for k in range(spec.ngens):
        c = spec.c_table[i][k]
        if c:
            total = total + partial(H, k).scale(spec.ctx.h * c)
    return total


# -- substitution and the chain rule ------------------------------------------------


def substitute(H: NCPoly, images: Mapping, target: AlgebraSpec | None = None) -> NCPoly:
    """Replace every generator ``u_k`` of ``H`` by ``images[k]`` (an element of ``target``)."""
    spec = H.spec
    imgs = _image_list(spec, images)
    target = target or (imgs[0].spec if imgs else spec)
    if spec.mode == "weyl_diffop":
        raise CalculusError("substitution starts from a free or constant-commutator algebra")
    total = target.zero()
    for w, c in H.terms.items():
        piece = target.scalar(c.to_context(target.ctx))
        for g in w:
            piece = nc_mul(piece, imgs[g])
        total = total + piece
    return total


def _image_list(spec: AlgebraSpec, images) -> list[NCPoly]:
    if isinstance(images, Mapping):
        imgs = [None] * spec.ngens
        for k, v in images.items():
            imgs[spec.index(k)] = v
    else:
        imgs = list(images)
    if len(imgs) != spec.ngens or any(v is None for v in imgs):
        raise CalculusError("substitution must give an image for every generator")
    tspec = imgs[0].spec
    for v in imgs:
        if not isinstance(v, NCPoly) or v.spec != tspec:
            raise CalculusError("substitution images must lie in one algebra")
    if spec.mode == "constant_commutator":
        # a homomorphism must respect [u_i, u_j] = h c_ij
        h = tspec.ctx.h
        for i in range(spec.ngens):
            for j in range(i + 1, spec.ngens):
                if commutator(imgs[i], imgs[j]) != tspec.scalar(h * spec.c_table[i][j]):
                    raise CalculusError("substitution does not respect the commutation relations")
    return imgs


def op_partial_substituted(H: NCPoly, k, images, y: NCPoly) -> NCPoly:
    """``(d~H/du_k)(y)`` with the remaining letters replaced by their images."""
    spec = H.spec
    imgs = _image_list(spec, images)
    target = y.spec
    k = spec.index(k)
    total = target.zero()
    for w, c in H.terms.items():
        for t, g in enumerate(w):
            if g != k:
                continue
            piece = target.scalar(c.to_context(target.ctx))
            for s, letter in enumerate(w):
                piece = nc_mul(piece, y if s == t else imgs[letter])
            total = total + piece
    return total


def chain_rule_sides(H: NCPoly, images, alpha, x: NCPoly) -> tuple[NCPoly, NCPoly]:
    """Both sides of ``d~(H o u)/dphi_a (x) = sum_k d~H/du_k (d~u_k/dphi_a (x))``."""
    imgs = _image_list(H.spec, images)
    target = imgs[0].spec
    x = target.coerce(x)
    lhs = op_partial(substitute(H, imgs, target), alpha, x)
    rhs = target.zero()
    for k in range(H.spec.ngens):
        inner = op_partial(imgs[k], alpha, x)
        if inner:
            rhs = rhs + op_partial_substituted(H, k, imgs, inner)
    return lhs, rhs


def chain_rule_check(H: NCPoly, images, alpha, x: NCPoly) -> bool:
    lhs, rhs = chain_rule_sides(H, images, alpha, x)
    return lhs == rhs


# -- cyclic calculus ------------------------------------------------------------------


def cyclic_variational(F: NCPoly, j) -> NCPoly:
    """``dF/dx_j`` modulo commutators: rotate each occurrence to the front and delete it."""
    spec = F.spec
    if spec.mode != "free":
        raise CalculusError("the cyclic derivative is defined on free algebras")
    j = spec.index(j)
    terms: dict = {}
    for w, c in F.terms.items():
        for t, g in enumerate(w):
            if g == j:
                _accumulate(terms, w[t + 1:] + w[:t], c)
    return NCPoly(spec, terms)


def necklace(word: tuple[int, ...]) -> tuple[int, ...]:
    """Least rotation of a word, the representative of its cyclic class."""
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def necklace_projection(F: NCPoly) -> dict:
    """Coefficients summed over cyclic classes; vanishes exactly on sums of commutators."""
    out: dict = {}
    for w, c in F.terms.items():
        _accumulate(out, necklace(w), c)
    return out
