import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncham import brackets as B
from ncham.corpus import random_antisymmetric, random_ncpoly, random_symbol
from ncham.ncalg import commutator, constant_algebra, nc_mul, normalize, weyl_algebra

W1 = weyl_algebra(1)
W2 = weyl_algebra(2)
W1C = weyl_algebra(1, representation="constant")
S1 = W1.symbol_context()
S2 = W2.symbol_context()


def test_poisson_examples():
    assert B.poisson(S1.parse("p"), S1.parse("q"), W1) == S1.one
    assert B.poisson(S1.parse("p^2"), S1.parse("q^2"), W1) == S1.parse("4*p*q")
    assert not B.poisson(S1.parse("q*p^3 + 2"), S1.one, W1)


def test_poisson_laws():
    rng = random.Random(1)
    for _ in range(20):
        a, b, c = (random_symbol(W2, rng) for _ in range(3))
        assert B.poisson(a, b, W2) == -B.poisson(b, a, W2)
        jac = (
            B.poisson(B.poisson(a, b, W2), c, W2)
            + B.poisson(B.poisson(b, c, W2), a, W2)
            + B.poisson(B.poisson(c, a, W2), b, W2)
        )
        assert not jac


def test_theta_examples():
    c = [[0, 2, -1], [-2, 0, 3], [1, -3, 0]]
    t = B.theta_table(c, 1)
    for i in range(3):
        for j in range(3):
            unit_i = tuple(int(k == i) for k in range(3))
            unit_j = tuple(int(k == j) for k in range(3))
            assert t[unit_i, unit_j] == c[i][j]
    assert B.theta_table([[0]], 3).entries == {}


def test_theta_square_of_symplectic_form():
    # (l1 m2 - l2 m1)^2 = l1^2 m2^2 - 2 l1 l2 m1 m2 + l2^2 m1^2
    t = B.theta_table([[0, 1], [-1, 0]], 2)
    assert t[(2, 0), (0, 2)] == 1
    assert t[(0, 2), (2, 0)] == 1
    assert t[(1, 1), (1, 1)] == -2
    assert t[(2, 0), (2, 0)] == 0
    assert len(t.at_order(2)) == 3


def test_theta_rejects_bad_tables():
    with pytest.raises(B.BracketError):
        B.theta_table([[0, 1], [1, 0]], 2)
    with pytest.raises(B.BracketError):
        B.theta_table([[0, 1]], 2)


def test_theta_expansion_examples():
    spec = constant_algebra(["a", "b"], [[0, 3], [-3, 0]])
    assert B.bracket_expansion_theta(spec.gen(0), spec.gen(1)) == spec.scalar(3)
    assert B.bracket_expansion_theta(W1C.parse("p^2"), W1C.parse("q^2")) == W1C.parse("4*q*p + 2*h")
    assert not B.bracket_expansion_theta(W1C.scalar(5), W1C.parse("q*p"))
    with pytest.raises(B.BracketError):
        B.bracket_expansion_theta(W1.parse("p"), W1.parse("q"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_theta_expansion_is_exact(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    spec = constant_algebra([f"u{i}" for i in range(m)], random_antisymmetric(m, rng))
    H = random_ncpoly(spec, rng, max_degree=4)
    F = random_ncpoly(spec, rng, max_degree=4)
    assert B.bracket_expansion_theta(H, F) == B.scaled_commutator(H, F)


def test_pair_expansion_examples():
    assert B.bracket_expansion_pair(W1.parse("p"), W1.parse("q")) == W1.one()
    H, F = W1.parse("p^2"), W1.parse("q^2")
    assert B.pair_operator_power(H, F, 1) == W1.parse("4*q*p + 4*h")
    assert B.pair_operator_power(H, F, 2) == W1.parse("4")
    assert B.bracket_expansion_pair(H, F) == W1.parse("4*q*p + 2*h")
    assert not B.bracket_expansion_pair(W1.parse("q^2"), W1.parse("q^3 + 1"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_pair_expansion_is_exact_in_one_degree_of_freedom(seed):
    rng = random.Random(seed)
    H = random_ncpoly(W1, rng, max_degree=6)
    F = random_ncpoly(W1, rng, max_degree=6)
    assert B.bracket_expansion_pair(H, F) == B.scaled_commutator(H, F)


def test_pair_expansion_in_two_degrees_of_freedom():
    rng = random.Random(3)
    for spec in (W2, weyl_algebra(2, representation="constant")):
        for _ in range(15):
            H = random_ncpoly(spec, rng, max_degree=4)
            F = random_ncpoly(spec, rng, max_degree=4)
            assert B.bracket_expansion_pair(H, F) == B.scaled_commutator(H, F)
            for s in (1, 2, 3):
                assert B.pair_operator_power(H, F, s) == B.pair_operator_power_sequences(H, F, s)


def test_symbol_examples():
    assert B.smbl(W1.parse("q*p + h")) == S1.parse("q*p")
    assert B.smbl(W1.parse("p^2*q^2")) == S1.parse("q^2*p^2")
    assert not B.smbl(W1.parse("h*(q*p + p^3)"))


def test_quantize_examples():
    assert B.normal_quantize(S1.parse("q*p"), W1) == W1.parse("q*p")
    assert B.normal_quantize(S1.parse("q^2*p + 3"), W1) == W1.parse("q^2*p + 3")
    assert B.normal_quantize(S1.parse("p*q"), W1C) == W1C.parse("q*p")


def test_symbol_round_trip():
    rng = random.Random(4)
    for spec in (W1, W2, W1C):
        for _ in range(20):
            a = random_symbol(spec, rng)
            assert B.smbl(B.normal_quantize(a, spec)) == a


def test_star_examples():
    p, q = S1.parse("p"), S1.parse("q")
    assert B.star_normal(p, q, W1) == S1.parse("p*q + h")
    assert B.normal_quantize(B.star_normal(p, q, W1), W1) == nc_mul(W1.gen("p"), W1.gen("q"))
    a = S1.parse("q^2*p + p^3")
    assert B.star_normal(a, S1.one, W1) == a
    assert B.star_normal(a, a, W1).at_h_zero() == a * a


def test_star_product_laws():
    rng = random.Random(5)
    for spec in (W1, W2):
        for _ in range(15):
            a, b, c = (random_symbol(spec, rng) for _ in range(3))
            ab = B.star_normal(a, b, spec)
            assert B.star_normal(ab, c, spec) == B.star_normal(a, B.star_normal(b, c, spec), spec)
            assert B.normal_quantize(ab, spec) == nc_mul(B.normal_quantize(a, spec), B.normal_quantize(b, spec))
            bracket = (ab - B.star_normal(b, a, spec)) / spec.symbol_context().h
            assert bracket.at_h_zero() == B.poisson(a, b, spec)


def test_symmetric_form_examples():
    assert B.symmetric_form(W1.parse("p"), W1.parse("q")) == W1.parse("q*p")
    H = W1.parse("q^2*p + h*p^3")
    assert B.symmetric_form(H, W1.one()) == H


def test_symmetric_form_is_symmetric():
    rng = random.Random(6)
    for spec in (W1, W2):
        for _ in range(25):
            H = random_ncpoly(spec, rng, max_degree=4)
            F = random_ncpoly(spec, rng, max_degree=4)
            assert B.symmetric_form(H, F) == B.symmetric_form(F, H)


def test_symmetric_form_is_quantized_symbol_product():
    rng = random.Random(7)
    for _ in range(20):
        H = random_ncpoly(W2, rng, max_degree=4)
        F = random_ncpoly(W2, rng, max_degree=4)
        expected = B.normal_quantize(B.to_symbol(H) * B.to_symbol(F), W2)
        assert B.symmetric_form(H, F) == expected


def test_dagger_examples():
    assert B.dagger(W1.parse("q")) == W1.parse("q")
    assert B.dagger(W1.parse("p")) == W1.parse("-p")
    assert B.dagger(W1.parse("q*p")) == W1.parse("-q*p - h")
    assert B.dagger(W1C.parse("q*p")) == W1C.parse("-q*p - h")


@pytest.mark.parametrize("spec", [W1, W2, weyl_algebra(2, representation="constant")], ids=["w1", "w2", "w2c"])
def test_dagger_is_an_antiinvolution(spec):
    rng = random.Random(8)
    for _ in range(20):
        H = random_ncpoly(spec, rng, max_degree=4, h_terms=True)
        F = random_ncpoly(spec, rng, max_degree=4)
        assert B.dagger(B.dagger(H)) == H
        assert B.dagger(nc_mul(H, F)) == nc_mul(B.dagger(F), B.dagger(H))


def test_dagger_with_rational_coefficients():
    from ncham.scalars import plain_context

    spec = weyl_algebra(ctx=plain_context(("q",)))
    H = spec.parse("1/(q^2 + 1)*p")
    assert B.dagger(H) == nc_mul(spec.parse("-p"), spec.parse("1/(q^2 + 1)"))
    assert B.dagger(B.dagger(H)) == H


def test_res_examples():
    assert B.res(W1.parse("q^2 + q*p")) == S1.parse("q^2")
    assert not B.res(W1.parse("q^2*p"))
    assert B.res(normalize([(1, ["p", "q"])], W1)) == S1.h


def test_res_form_examples():
    q, p = W1.gen("q"), W1.gen("p")
    assert B.res_form(q, q) == S1.parse("q^2")
    assert not B.res_form(p, p)
    assert B.res_form(W1.one(), W1.one()) == S1.one


def test_witness_examples():
    ctx = W2.ctx
    g = B.divergence_witness(ctx.parse("2*q1 + q2"), ctx.parse("q2"), ("q1", "q2"))
    assert g == [ctx.parse("q1^2"), ctx.zero]
    a = ctx.parse("q1*q2^2")
    assert B.divergence_witness(a, a, ("q1", "q2")) == [ctx.zero, ctx.zero]


def test_res_form_symmetric_up_to_divergence():
    rng = random.Random(9)
    spec = W2
    coords = ("q1", "q2")
    for _ in range(20):
        H = random_ncpoly(spec, rng, max_degree=4)
        F = random_ncpoly(spec, rng, max_degree=4)
        a, b = B.res_form(H, F), B.res_form(F, H)
        a, b = a.to_context(spec.ctx), b.to_context(spec.ctx)
        g = B.divergence_witness(a, b, coords)
        assert sum((gi.diff(c) for gi, c in zip(g, coords)), spec.ctx.zero) == a - b


def test_classical_limit():
    rng = random.Random(10)
    for spec in (W1, W2):
        for _ in range(20):
            H = random_ncpoly(spec, rng, max_degree=5)
            F = random_ncpoly(spec, rng, max_degree=5)
            lhs, rhs = B.classical_limit_sides(H, F)
            assert lhs == rhs


def test_scaled_commutator_matches_definition():
    H, F = W1.parse("p^3"), W1.parse("q")
    assert B.scaled_commutator(H, F).scale(W1.ctx.h) == commutator(H, F)
    assert B.scaled_commutator(H, F) == W1.parse("3*p^2")
