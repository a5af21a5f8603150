"""Seeded random elements and the point-map corpus used by property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .canon import PointMap
from .ncalg import AlgebraSpec, NCPoly, normalize
from .scalars import Scalar, ScalarContext, plain_context, polar_context


def random_ncpoly(
    spec: AlgebraSpec,
    rng: random.Random,
    max_degree: int = 4,
    max_terms: int = 4,
    coeff_range: int = 3,
    h_terms: bool = False,
    letters=None,
) -> NCPoly:
    """Normal form of a random raw sum of words in the generators.

    In weyl_diffop mode coordinates appear as letters too, so products like
    ``p q`` produce genuine reordering.
    """
    letters = list(range(spec.ngens)) if letters is None else [spec.index(g) for g in letters]
    raw = []
    for _ in range(rng.randint(1, max_terms)):
        length = rng.randint(0, max_degree)
        word = [rng.choice(letters) for _ in range(length)]
        c = rng.randint(-coeff_range, coeff_range) or 1
        coeff = spec.ctx.coerce(c)
        if h_terms and rng.random() < 0.3:
            coeff = coeff * spec.ctx.h
        raw.append((coeff, word))
    return normalize(raw, spec)


def random_homogeneous(spec: AlgebraSpec, rng: random.Random, degree: int, max_terms: int = 4) -> NCPoly:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        word = [rng.randrange(spec.ngens) for _ in range(degree)]
        terms.append((rng.randint(-3, 3) or 1, word))
    return normalize(terms, spec)


def random_symbol(spec: AlgebraSpec, rng: random.Random, max_degree: int = 3, max_terms: int = 4) -> Scalar:
    """Random commutative polynomial in the coordinate and momentum symbols."""
    sctx = spec.symbol_context()
    g = spec.generators
    names = [g[q] for q in spec.positions] + [g[p] for p in spec.momenta]
    total = sctx.zero
    for _ in range(rng.randint(1, max_terms)):
        term = sctx.coerce(rng.randint(-3, 3) or 1)
        for _ in range(rng.randint(0, max_degree)):
            term = term * sctx.symbol(rng.choice(names))
        total = total + term
    return total


def random_antisymmetric(m: int, rng: random.Random, bound: int = 2) -> list[list[int]]:
    c = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = rng.randint(-bound, bound)
            c[i][j], c[j][i] = v, -v
    return c


def random_coordinate_poly(ctx: ScalarContext, rng: random.Random, names, max_degree: int = 2) -> Scalar:
    total = ctx.zero
    for _ in range(rng.randint(1, 3)):
        term = ctx.coerce(rng.randint(-2, 2) or 1)
        for _ in range(rng.randint(1, max_degree)):
            term = term * ctx.symbol(rng.choice(names))
        total = total + term
    return total


def random_triangular_map(rng: random.Random, n: int, max_degree: int = 3) -> PointMap:
    """``q_i -> q_i + f_i(q_1..q_{i-1})`` (unit determinant)."""
    coords = ("q",) if n == 1 else tuple(f"q{i + 1}" for i in range(n))
    ctx = plain_context(coords)
    targets = []
    for i, c in enumerate(coords):
        t = ctx.symbol(c)
        if i:
            t = t + random_coordinate_poly(ctx, rng, coords[:i], max_degree)
        targets.append(t)
    return PointMap(ctx, targets)


@dataclass(frozen=True)
class MapCase:
    name: str
    coordinates: tuple  # empty tuple selects the polar context
    targets: tuple
    target_names: tuple = ()
    constant_det: bool = True

    def build(self) -> PointMap:
        ctx = polar_context() if not self.coordinates else plain_context(self.coordinates)
        return PointMap(ctx, self.targets, self.target_names or None)


_Q1 = ("q",)
_Q2 = ("q1", "q2")
_Q3 = ("q1", "q2", "q3")

MAP_CORPUS: tuple[MapCase, ...] = (
    MapCase("identity-1", _Q1, ("q",)),
    MapCase("shift-1", _Q1, ("q + 1",)),
    MapCase("scale-1", _Q1, ("2*q",)),
    MapCase("cubic-1", _Q1, ("q^3 + q",), constant_det=False),
    MapCase("quadratic-1", _Q1, ("q + q^2",), constant_det=False),
    MapCase("identity-2", _Q2, ("q1", "q2")),
    MapCase("shear-2", _Q2, ("q1 + q2", "q2")),
    MapCase("unimodular-2", _Q2, ("2*q1 + q2", "q1 + q2")),
    MapCase("triangular-2a", _Q2, ("q1", "q2 + q1^2")),
    MapCase("triangular-2b", _Q2, ("q1 + q2^3", "q2")),
    MapCase("tame-2a", _Q2, ("q1 + q2", "q2 + (q1 + q2)^2")),
    MapCase("tame-2b", _Q2, ("q1 + (q2 + q1^2)^2", "q2 + q1^2")),
    MapCase("diagonal-2", _Q2, ("2*q1", "3*q2")),
    MapCase("cubic-2", _Q2, ("q1^3 + q1", "q2"), constant_det=False),
    MapCase("diagonal-cubic-2", _Q2, ("q1 + q1^2", "q2 + q2^3"), constant_det=False),
    MapCase("identity-3", _Q3, ("q1", "q2", "q3")),
    MapCase("triangular-3", _Q3, ("q1", "q2 + q1^2", "q3 + q1*q2")),
    MapCase("unimodular-3", _Q3, ("q1 + q2", "q2 + q3", "q3")),
    MapCase("tame-3", _Q3, ("q1 + q2 + q3^2", "q2 + q3^2", "q3")),
    MapCase("cubic-3", _Q3, ("q1^3 + q1", "q2", "q3 + q2^2"), constant_det=False),
    MapCase("polar", (), ("r*c", "r*s"), ("x", "y"), constant_det=False),
)

# triangular/linear composites whose inverses have degree at most 4
TAME_MAPS: tuple[MapCase, ...] = (
    MapCase("shear-2", _Q2, ("q1 + q2", "q2")),
    MapCase("unimodular-2", _Q2, ("2*q1 + q2", "q1 + q2")),
    MapCase("triangular-2a", _Q2, ("q1", "q2 + q1^2")),
    MapCase("triangular-2c", _Q2, ("q1 + q2^2", "q2")),
    MapCase("triangular-2b", _Q2, ("q1 + q2^3", "q2")),
    MapCase("tame-2a", _Q2, ("q1 + q2", "q2 + (q1 + q2)^2")),
    MapCase("tame-2b", _Q2, ("q1 + (q2 + q1^2)^2", "q2 + q1^2")),
    MapCase("triangular-3", _Q3, ("q1", "q2 + q1^2", "q3 + q1*q2")),
    MapCase("unimodular-3", _Q3, ("q1 + q2", "q2 + q3", "q3")),
    MapCase("tame-3", _Q3, ("2*q1", "q2 + q1", "q3 - q2^2")),
)


def corpus_maps() -> list[tuple[MapCase, PointMap]]:
    return [(case, case.build()) for case in MAP_CORPUS]
