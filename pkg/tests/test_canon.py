import random

import pytest

from ncham import canon as K
from ncham.brackets import dagger
from ncham.corpus import MAP_CORPUS, TAME_MAPS, corpus_maps, random_triangular_map
from ncham.ncalg import free_algebra, nc_mul, weyl_algebra
from ncham.scalars import plain_context, polar_context

CORPUS = corpus_maps()
IDS = [case.name for case, _ in CORPUS]


def point_map(coords, targets, names=None):
    return K.PointMap(plain_context(coords), targets, names)


def polar():
    return K.PointMap(polar_context(), ["r*c", "r*s"], ["x", "y"])


def cubic():
    return point_map(("q",), ["q^3 + q"])


def test_jacobian_examples():
    ident = point_map(("q1", "q2"), ["q1", "q2"])
    ctx = ident.ctx
    assert ident.jacobian.entries == [[ctx.one, ctx.zero], [ctx.zero, ctx.one]]
    P = polar()
    assert P.jacobian.det == P.ctx.parse("r")
    assert P.jacobian.rows_text() == [["c", "-r*s"], ["s", "r*c"]]
    C = cubic()
    assert C.jacobian.entries == [[C.ctx.parse("3*q^2 + 1")]]


def test_singular_map_is_rejected():
    with pytest.raises(K.CanonError):
        point_map(("q1", "q2"), ["q1 + q2", "2*q1 + 2*q2"])
    with pytest.raises(K.CanonError):
        point_map(("q1", "q2"), ["q1"])


@pytest.mark.parametrize("case,phi", CORPUS, ids=IDS)
def test_adjugate_identity(case, phi):
    assert all(not x for row in phi.jacobian.adj_identity_residual() for x in row)


def test_classical_lift_examples():
    ident = point_map(("q",), ["q"])
    S = ident.spec.symbol_context()
    assert K.classical_lift(ident).P == [S.parse("p")]
    lin = point_map(("q1", "q2"), ["2*q1 + q2", "q1 + q2"])
    # A = [[2, 1], [1, 1]], (A^-1)^t = [[1, -1], [-1, 2]]
    S2 = lin.spec.symbol_context()
    assert K.classical_lift(lin).P == [S2.parse("p1 - p2"), S2.parse("-p1 + 2*p2")]
    P = polar()
    Sp = P.spec.symbol_context()
    assert K.classical_lift(P).P == [Sp.parse("c*p_r - s/r*p_theta"), Sp.parse("s*p_r + c/r*p_theta")]


def test_right_lift_examples():
    assert K.lift_right(point_map(("q",), ["q"])).P == [weyl_algebra(1).gen("p")]
    P = polar()
    spec = P.spec
    assert K.lift_right(P).P == [spec.parse("c*p_r - s/r*p_theta"), spec.parse("s*p_r + c/r*p_theta")]
    C = cubic()
    assert K.lift_right(C).P == [C.spec.parse("1/(3*q^2 + 1)*p")]


def test_left_lift_examples():
    P = polar()
    spec = P.spec
    left = K.lift_left(P).P
    assert left[0] == nc_mul(spec.parse("p_r"), spec.parse("c")) - nc_mul(spec.parse("p_theta"), spec.parse("s/r"))
    assert left[1] == nc_mul(spec.parse("p_r"), spec.parse("s")) + nc_mul(spec.parse("p_theta"), spec.parse("c/r"))
    assert left[0] == spec.parse("c*p_r - s/r*p_theta - h*c/r")
    lin = point_map(("q1", "q2"), ["q1 + q2", "q2"])
    assert K.lift_left(lin).P == K.lift_right(lin).P


def test_gauge_examples():
    ident = point_map(("q1", "q2"), ["q1", "q2"])
    spec = ident.spec
    # P = p - grad f, so g = q1 q2 corresponds to f = -g
    cand = K.gauge_lift(ident, ident.ctx.parse("-q1*q2"))
    assert cand.P == [spec.parse("p1 + q2"), spec.parse("p2 + q1")]
    assert K.check_canonical_quantum(cand).passed
    zero = K.gauge_lift(polar(), 0)
    assert zero.P == K.lift_right(polar()).P
    classical = K.gauge_lift(ident, ident.ctx.parse("q1^3*q2"), quantum=False)
    assert K.check_canonical_classical(classical).passed


def test_gauge_with_arbitrary_function_keeps_canonicity():
    rng = random.Random(1)
    for _ in range(10):
        phi = random_triangular_map(rng, 2)
        f = phi.ctx.parse(f"{rng.randint(-3, 3)}*q1^{rng.randint(0, 3)}*q2^{rng.randint(0, 3)} + q2^2")
        assert K.check_canonical_quantum(K.gauge_lift(phi, f)).passed
        assert K.check_canonical_classical(K.gauge_lift(phi, f, quantum=False)).passed


def test_psi_examples():
    C = cubic()
    d = K.psi_defect(C)
    assert d.psi == [C.spec.parse("p + h*6*q/(3*q^2 + 1)")]
    assert all(not x for x in d.defect)
    P = polar()
    dp = K.psi_defect(P)
    assert dp.psi == [P.spec.parse("p_r + h/r"), P.spec.parse("p_theta")]
    lin = point_map(("q1", "q2"), ["q1 + q2", "q2"])
    assert K.psi_defect(lin).psi == [lin.spec.gen("p1"), lin.spec.gen("p2")]


def test_grad_log_det_examples():
    diag = point_map(("q1", "q2"), ["q1^2/2", "q2^2/2"])
    assert K.grad_log_det(diag.jacobian, 0) == diag.ctx.parse("1/q1")
    P = polar()
    routes = K.grad_log_det_routes(P.jacobian, 0)
    assert set(routes.values()) == {P.ctx.parse("1/r")}
    assert not K.grad_log_det(P.jacobian, 1)
    lin = point_map(("q1", "q2"), ["2*q1 + q2", "q1 + q2"])
    assert not K.grad_log_det(lin.jacobian, 0)


@pytest.mark.parametrize("case,phi", CORPUS, ids=IDS)
def test_grad_log_det_routes_agree(case, phi):
    for i in range(phi.n):
        routes = K.grad_log_det_routes(phi.jacobian, i)
        assert routes["inverse"] == routes["adjugate"] == routes["determinant"]


def test_canonical_checks():
    W = weyl_algebra(1)
    ok = K.CandidatePair([W.gen("p")], [W.gen("q")], "quantum", W)
    assert K.check_canonical_quantum(ok).passed
    swapped = K.CandidatePair([W.gen("q")], [W.gen("p")], "quantum", W)
    rep = K.check_canonical_quantum(swapped)
    assert not rep.passed
    (label, value), = rep.failures()
    assert value == W.scalar(-2 * W.ctx.h)  # [q, p] - h = -2h
    S = W.symbol_context()
    assert K.check_canonical_classical(K.CandidatePair([S.parse("p")], [S.parse("q")], "classical", W)).passed
    bad = K.check_canonical_classical(K.CandidatePair([S.parse("2*p")], [S.parse("q")], "classical", W))
    assert [v for _, v in bad.failures()] == [S.one]  # {2p, q} - 1 = 1


def test_psi_h_family_regression():
    W = weyl_algebra(1)
    psi = W.ctx.parse("1 + 2*h + h^3")
    cand = K.CandidatePair([W.parse("p").scale(psi)], [W.parse("q").scale(psi.inverse())], "quantum", W)
    assert K.check_canonical_quantum(cand).passed


@pytest.mark.parametrize("case,phi", CORPUS, ids=IDS)
def test_lifts_are_canonical(case, phi):
    assert K.check_canonical_quantum(K.lift_right(phi)).passed
    assert K.check_canonical_quantum(K.lift_left(phi)).passed
    assert K.check_canonical_classical(K.classical_lift(phi)).passed


def test_random_triangular_lifts_are_canonical():
    rng = random.Random(2)
    for k in range(20):
        phi = random_triangular_map(rng, 2 + k % 2)
        assert K.check_canonical_quantum(K.lift_right(phi)).passed
        assert K.check_canonical_quantum(K.lift_left(phi)).passed


@pytest.mark.parametrize("case,phi", CORPUS, ids=IDS)
def test_lift_identities(case, phi):
    assert all(not x for x in K.lift_difference_residual(phi))
    assert all(not x for x in K.psi_defect(phi).defect)
    flat = all(not K.grad_log_det(phi.jacobian, i) for i in range(phi.n))
    assert flat == case.constant_det
    assert (K.lift_left(phi).P == K.lift_right(phi).P) == flat


@pytest.mark.parametrize("case,phi", CORPUS, ids=IDS)
def test_mechanical_hamiltonians_are_selfadjoint(case, phi):
    mech = K.mechanical_lr(phi, K.identity_metric(phi.n))
    assert dagger(mech.H_lr) == mech.H_lr
    assert dagger(mech.H_rl) == mech.H_rl
    for left, right in zip(mech.P_left, mech.P_right):
        assert dagger(left) == -right


def test_mechanical_examples():
    P = polar()
    mech = K.mechanical_lr(P, K.identity_metric(2))
    expected = P.spec.parse("p_r^2 + r^-2*p_theta^2")
    assert mech.H_lr == expected == mech.H_rl
    ident = point_map(("q",), ["q"])
    m = K.mechanical_lr(ident, [["Q1^2 + 1"]], V="Q1^4")
    spec = ident.spec
    assert m.H_lr == nc_mul(nc_mul(spec.gen("p"), spec.parse("q^2 + 1")), spec.gen("p")) + spec.parse("q^4")


def test_mechanical_rejects_bad_metric():
    P = polar()
    with pytest.raises(K.CanonError):
        K.mechanical_lr(P, [["1", "x"], ["y", "1"]])
    with pytest.raises(K.CanonError):
        K.mechanical_lr(P, [["1"]])


def test_naive_hamiltonians():
    P = polar()
    spec = P.spec
    left = K.naive_transformed_hamiltonian(P, "left")
    right = K.naive_transformed_hamiltonian(P, "right")
    base = spec.parse("p_r^2 + r^-2*p_theta^2")
    assert left.H == base - nc_mul(spec.parse("h*p_r"), spec.parse("1/r"))
    assert right.H == base + spec.parse("h/r*p_r")
    assert left.adjoint_defect and right.adjoint_defect
    ident = point_map(("q1", "q2"), ["q1", "q2"])
    n = K.naive_transformed_hamiltonian(ident, "left")
    assert n.H == ident.spec.parse("p1^2 + p2^2")
    assert not n.adjoint_defect
    with pytest.raises(K.CanonError):
        K.naive_transformed_hamiltonian(ident, "middle")


@pytest.mark.parametrize("case,phi", CORPUS, ids=IDS)
def test_lr_difference_routes_agree(case, phi):
    d = K.lr_difference(phi, K.identity_metric(phi.n))
    assert d.passed
    if case.constant_det:
        assert not d.direct


def test_lr_difference_with_a_metric():
    C = cubic()
    d = K.lr_difference(C, [["Q1^2 + 2"]])
    assert d.passed and d.direct


def test_inverse_search():
    tri = point_map(("q1", "q2"), ["q1", "q2 + q1^2"])
    res = K.attempt_inverse(tri, 2)
    assert res.found and res.verified
    assert [str(g) for g in res.inverse] == ["Q1", "Q2 - Q1^2"]
    none = K.attempt_inverse(tri, 1)
    assert not none.found
    assert none.describe() == "none up to degree 1"
    lin = point_map(("q1", "q2"), ["2*q1 + q2", "q1 + q2"])
    r = K.attempt_inverse(lin, 1)
    assert [str(g) for g in r.inverse] == ["Q1 - Q2", "-Q1 + 2*Q2"]
    with pytest.raises(K.CanonError):
        K.attempt_inverse(tri, 0)


@pytest.mark.parametrize("case", TAME_MAPS, ids=[c.name for c in TAME_MAPS])
def test_tame_maps_have_polynomial_inverses(case):
    assert K.attempt_inverse(case.build(), 4).verified


def test_inverse_of_classical_pair():
    W = weyl_algebra(1)
    S = W.symbol_context()
    cand = K.CandidatePair([S.parse("p + q^2")], [S.parse("q")], "classical", W)
    r = K.attempt_inverse(cand, 2)
    assert r.verified
    with pytest.raises(K.CanonError):
        K.attempt_inverse(K.lift_right(cubic()), 2)


def test_nc_jacobian():
    X = free_algebra(["x1", "x2"])
    ident = K.nc_jacobian([X.gen(0), X.gen(1)])
    y = X.parse("x2*x1 + 3")
    assert ident.apply(0, 0, y) == y
    assert not ident.apply(0, 1, y)
    J = K.nc_jacobian([X.parse("x1*x2"), X.parse("x2 + x1^3")])
    assert J.variational[0][0] == X.gen(1)
    assert J.operator(0, 1)(y) == nc_mul(X.gen(0), y)
    with pytest.raises(K.CanonError):
        K.nc_jacobian([weyl_algebra(1).gen(0)])


def test_nc_jacobian_abelianizes_to_the_commutative_jacobian():
    rng = random.Random(3)
    X = free_algebra(["x1", "x2"])
    ctx = plain_context(("x1", "x2"))
    from ncham.corpus import random_ncpoly

    def abelian(f):
        total = ctx.zero
        for w, c in f.terms.items():
            term = c.to_context(ctx) if c.ctx != ctx else c
            for g in w:
                term = term * ctx.symbol(X.generators[g])
            total = total + term
        return total

    for _ in range(20):
        F = [random_ncpoly(X, rng, max_degree=4) for _ in range(2)]
        J = K.nc_jacobian(F)
        for i in range(2):
            for j in range(2):
                assert abelian(J.variational[i][j]) == abelian(F[i]).diff(X.generators[j])


def test_corpus_is_covered():
    assert len(MAP_CORPUS) >= 20
    assert any(not c.constant_det for c in MAP_CORPUS)
