import random

import pytest

from ncham import calculus as C
from ncham.brackets import scaled_commutator
from ncham.corpus import random_antisymmetric, random_homogeneous, random_ncpoly
from ncham.ncalg import constant_algebra, free_algebra, nc_mul, normalize, project, weyl_algebra

U = free_algebra(["u1", "u2", "u3"])
X = free_algebra(["x1", "x2"])
W1 = weyl_algebra(1)
W1C = weyl_algebra(1, representation="constant")


def e(spec, text):
    return spec.parse(text)


def test_partial_deletes_each_occurrence():
    assert C.partial(e(U, "u1*u2*u1"), "u1") == e(U, "u2*u1 + u1*u2")
    assert C.partial(e(W1, "q*p"), "p") == e(W1, "q")
    assert not C.partial(e(U, "u2*u3"), "u1")


def test_partial_well_defined_on_the_quotient():
    free = W1C.free()
    raw = free.parse("p*p*q*q")
    before = project(C.partial(raw, "p"), W1C)
    after = C.partial(project(raw, W1C), "p")
    assert before == after == e(W1C, "2*q*q*p + 4*h*q")


def test_partial_in_weyl_diffop_acts_on_coefficients():
    assert C.partial(e(W1, "q^3*p + h*q"), "q") == e(W1, "3*q^2*p + h")


def test_op_partial_examples():
    x = U.gen("u3")
    assert C.op_partial(e(U, "u1*u2"), "u2", x) == e(U, "u1*u3")
    assert C.op_partial(e(U, "u1^2"), "u1", x) == e(U, "u3*u1 + u1*u3")


def test_op_partial_at_one_is_partial():
    rng = random.Random(1)
    for spec in (U, W1C, weyl_algebra(2)):
        for _ in range(20):
            H = random_ncpoly(spec, rng, max_degree=4)
            for k in range(spec.ngens):
                assert C.op_partial(H, k, spec.one()) == C.partial(H, k)


def test_partial_multi():
    H = e(W1, "p^2*q^2")
    assert C.partial_multi(H, [0, 0]) == H
    assert C.partial_multi(H, [1, 1]) == C.partial_multi(H, [1, 1], order=[1, 0])
    assert C.partial_multi(H, [1, 1]) == e(W1, "4*q*p + 4*h")
    assert not C.partial_multi(H, [3, 0])
    with pytest.raises(C.CalculusError):
        C.partial_multi(H, [1])


def test_mixed_partials_commute():
    rng = random.Random(2)
    for spec in (U, weyl_algebra(2), weyl_algebra(2, representation="constant")):
        for _ in range(15):
            H = random_ncpoly(spec, rng, max_degree=6, max_terms=5)
            for a in range(spec.ngens):
                for b in range(spec.ngens):
                    assert C.partial(C.partial(H, a), b) == C.partial(C.partial(H, b), a)


def test_differential_examples():
    assert str(C.differential(e(U, "u1*u2"))) == "(1) du1 (u2) + (u1) du2 (1)"
    assert not C.differential(U.scalar(5))


def test_pair_examples():
    one_form = C.OneForm.from_triples(U, [(1, "u1", 1)])
    X_ = C.Derivation(U, {"u1": e(U, "u2 + u3")})
    assert C.pair(one_form, X_) == e(U, "u2 + u3")
    form = C.OneForm.from_triples(U, [(U.gen("u2"), "u1", U.gen("u3"))])
    assert C.pair(form, C.Derivation(U, {"u1": e(U, "u1^2")})) == e(U, "u2*u1*u1*u3")


def test_pairing_reproduces_the_derivation():
    rng = random.Random(3)
    for spec in (U, constant_algebra(["a", "b", "c"], random_antisymmetric(3, rng))):
        for _ in range(20):
            H = random_ncpoly(spec, rng, max_degree=4)
            X_ = C.Derivation(spec, {k: random_ncpoly(spec, rng, max_degree=2) for k in range(spec.ngens)})
            assert C.pair(C.differential(H), X_) == C.apply_derivation(X_, H)


def test_pairing_is_bilinear():
    rng = random.Random(4)
    for _ in range(20):
        H1, H2 = random_ncpoly(U, rng), random_ncpoly(U, rng)
        X_ = C.Derivation(U, {k: random_ncpoly(U, rng, max_degree=2) for k in range(3)})
        lhs = C.pair(C.differential(H1).scale(3) + C.differential(H2), X_)
        assert lhs == C.pair(C.differential(H1), X_).scale(3) + C.pair(C.differential(H2), X_)


def test_derivation_is_leibniz():
    rng = random.Random(5)
    for _ in range(20):
        a, b = random_ncpoly(U, rng), random_ncpoly(U, rng)
        X_ = C.Derivation(U, {k: random_ncpoly(U, rng, max_degree=2) for k in range(3)})
        lhs = C.apply_derivation(X_, nc_mul(a, b))
        assert lhs == nc_mul(C.apply_derivation(X_, a), b) + nc_mul(a, C.apply_derivation(X_, b))
    assert not C.apply_derivation(C.Derivation(U, {}), e(U, "u1*u2"))


def test_euler_operator_reading():
    rng = random.Random(6)
    for degree in range(5):
        H = random_homogeneous(U, rng, degree)
        assert C.apply_derivation(C.radial(U), H) == H.scale(degree)
        assert not C.euler_defect(H)


def test_euler_left_multiplication_reading_fails():
    H = e(U, "u1*u2")
    left_reading = sum((nc_mul(U.gen(k), C.partial(H, k)) for k in range(3)), U.zero())
    assert left_reading != H.scale(2)
    assert C.apply_derivation(C.radial(U), H) == H.scale(2)


def test_ad_matches_partials_in_constant_algebras():
    rng = random.Random(7)
    for _ in range(20):
        m = rng.randint(2, 4)
        spec = constant_algebra([f"u{i}" for i in range(m)], random_antisymmetric(m, rng))
        H = random_ncpoly(spec, rng, max_degree=4)
        for i in range(m):
            assert C.ad(spec.gen(i), H) == C.ad_via_partials(i, H)
        assert not C.ad(H, H)


def test_ad_preserves_the_relation_ideal():
    rng = random.Random(8)
    spec = constant_algebra(["a", "b", "c"], [[0, 1, -2], [-1, 0, 3], [2, -3, 0]])
    free = spec.free()
    h = free.ctx.h
    for _ in range(10):
        i, j = rng.sample(range(3), 2)
        rel = nc_mul(free.gen(i), free.gen(j)) - nc_mul(free.gen(j), free.gen(i)) - free.scalar(h * spec.c_table[i][j])
        phi, psi, F = (random_ncpoly(free, rng, max_degree=2) for _ in range(3))
        element = nc_mul(nc_mul(phi, rel), psi)
        assert not project(element, spec)
        assert not project(C.ad(F, element), spec)


def test_chain_rule_examples():
    phi = free_algebra(["f1"])
    u = free_algebra(["u1"])
    H = u.parse("u1^2")
    imgs = [phi.parse("f1^2")]
    assert C.chain_rule_check(H, imgs, "f1", phi.one())
    ident = free_algebra(["v1", "v2"])
    H2 = X.parse("x1*x2*x1")
    assert C.chain_rule_check(H2, [ident.gen(0), ident.gen(1)], "v1", ident.parse("v2*v1"))


def test_chain_rule_random():
    rng = random.Random(9)
    phi = free_algebra(["f1", "f2"])
    for _ in range(50):
        H = random_ncpoly(X, rng, max_degree=3)
        imgs = [random_ncpoly(phi, rng, max_degree=2) for _ in range(2)]
        x = random_ncpoly(phi, rng, max_degree=2)
        assert C.chain_rule_check(H, imgs, rng.randrange(2), x)


def test_chain_rule_in_weyl_constant_form():
    rng = random.Random(10)
    for _ in range(10):
        H = random_ncpoly(W1C, rng, max_degree=3)
        imgs = [W1C.parse("q"), W1C.parse("p + q^2")]
        assert C.chain_rule_check(H, imgs, "q", W1C.parse("p"))


def test_cyclic_examples():
    assert C.cyclic_variational(e(X, "x1*x2"), "x1") == X.gen("x2")
    assert C.cyclic_variational(e(X, "x1^2"), "x1") == e(X, "2*x1")
    assert not C.cyclic_variational(X.scalar(3), "x2")
    with pytest.raises(C.CalculusError):
        C.cyclic_variational(e(W1C, "q*p"), "q")


def test_cyclic_congruence_modulo_commutators():
    rng = random.Random(11)
    for _ in range(40):
        F = random_ncpoly(X, rng, max_degree=5)
        chi = random_ncpoly(X, rng, max_degree=2)
        for j in range(2):
            diff = C.op_partial(F, j, chi) - nc_mul(C.cyclic_variational(F, j), chi)
            assert C.necklace_projection(diff) == {}


def test_necklace_detects_commutators():
    a, b = X.parse("x1*x1*x2"), X.parse("x2*x1")
    assert C.necklace_projection(nc_mul(a, b) - nc_mul(b, a)) == {}
    assert C.necklace_projection(X.parse("x1*x2")) != {}


def test_heisenberg_equals_hamilton():
    rng = random.Random(12)
    for n in (1, 2, 3):
        spec = weyl_algebra(n)
        for _ in range(10):
            H = random_ncpoly(spec, rng, max_degree=5)
            for q, p in spec.weyl_pairs:
                assert scaled_commutator(H, spec.gen(q)) == C.partial(H, p)
                assert scaled_commutator(H, spec.gen(p)) == -C.partial(H, q)


def test_one_forms_need_word_algebras():
    with pytest.raises(C.CalculusError):
        C.differential(e(W1, "q*p"))


def test_substitution_must_respect_relations():
    with pytest.raises(C.CalculusError):
        C.substitute(e(W1C, "p*q"), [W1C.gen("p"), W1C.gen("q")])


def test_normalize_then_partial_sum_rule():
    raw = [(2, ["u1", "u2"]), (-1, ["u2", "u2", "u1"])]
    H = normalize(raw, U)
    assert C.partial(H, "u2") == e(U, "2*u1 - u2*u1 - u2*u1")
