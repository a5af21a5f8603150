"""Acceptance suite shared by ``ncham selftest`` and the test-suite.

Each criterion is a function ``(seed) -> Result``.  Random inputs come from
``random.Random(seed + number)`` so a failing run is reproducible from the
printed seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from importlib import resources
from itertools import product

from . import brackets, calculus, canon
from .corpus import MAP_CORPUS, TAME_MAPS, random_antisymmetric, random_ncpoly, random_symbol
from .ncalg import constant_algebra, nc_mul, normalize, normalize_randomized, weyl_algebra
from .scalars import Scalar


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:2d} {self.title} ({self.seconds:.2f} s): {self.detail}"


def _timed(number, title, limit=None):
    def wrap(fn):
        def run(seed: int = 0) -> Result:
            t0 = time.perf_counter()
            ok, detail = fn(random.Random(seed + number))
            dt = time.perf_counter() - t0
            if limit is not None and dt >= limit:
                ok, detail = False, f"{detail}; over the {limit:g} s budget"
            return Result(number, title, ok, detail, dt)

        run.number = number
        run.title = title
        return run

    return wrap


def demo_text() -> str:
    return resources.files("ncham.demos").joinpath("polar.ncs").read_text(encoding="utf-8")


# The demo asserts these against the evaluator's own products; here they are
# compared once more as normalized text.
POLAR_EXPECTED = {
    "PL_x": "c p_r - s/r p_theta - c*h/r",
    "PL_y": "s p_r + c/r p_theta - s*h/r",
    "PR_x": "c p_r - s/r p_theta",
    "PR_y": "s p_r + c/r p_theta",
    "H_naive_left": "p_r p_r + 1/r^2 p_theta p_theta - h/r p_r + h^2/r^2",
    "H_naive_right": "p_r p_r + 1/r^2 p_theta p_theta + h/r p_r",
    "H_lr": "p_r p_r + 1/r^2 p_theta p_theta",
    "H_rl": "p_r p_r + 1/r^2 p_theta p_theta",
}


@_timed(1, "polar golden values", limit=1.0)
def criterion_1(rng):
    from .cli.evaluator import run_script

    report = run_script(demo_text())
    s = report.summary()
    if not report.ok:
        bad = [e for e in report.entries if e.status in ("error", "fail")]
        return False, f"{bad[0].statement}: {bad[0].message}"
    seen = {label: value for e in report.entries for label, value in e.outputs}
    wrong = [k for k, v in POLAR_EXPECTED.items() if seen.get(k) != v]
    if wrong:
        return False, f"unexpected text for {', '.join(wrong)}"
    return True, f"{s['passed']} checks passed, {len(POLAR_EXPECTED)} values match"


@_timed(2, "pair expansion equals h^-1[H,F]", limit=60.0)
def criterion_2(rng):
    count = 0
    for n, deg in ((1, 6), (2, 4)):
        spec = weyl_algebra(n)
        for _ in range(100):
            H = random_ncpoly(spec, rng, max_degree=deg, max_terms=4)
            F = random_ncpoly(spec, rng, max_degree=deg, max_terms=4)
            if brackets.bracket_expansion_pair(H, F) != brackets.scaled_commutator(H, F):
                return False, f"mismatch for H = {H}, F = {F}"
            count += 1
    return True, f"{count} pairs (N=1 deg<=6, N=2 deg<=4)"


@_timed(3, "theta expansion equals h^-1[H,F]", limit=60.0)
def criterion_3(rng):
    for _ in range(50):
        m = rng.randint(1, 3)
        c = random_antisymmetric(m, rng)
        spec = constant_algebra([f"u{i + 1}" for i in range(m)], c)
        H = random_ncpoly(spec, rng, max_degree=4)
        F = random_ncpoly(spec, rng, max_degree=4)
        if brackets.bracket_expansion_theta(H, F) != brackets.scaled_commutator(H, F):
            return False, f"mismatch for c = {c}, H = {H}, F = {F}"
    return True, "50 pairs over random antisymmetric tables, m<=3, deg<=4"


@_timed(4, "Heisenberg equations match Hamilton's")
def criterion_4(rng):
    for _ in range(100):
        n = rng.randint(1, 3)
        spec = weyl_algebra(n)
        H = random_ncpoly(spec, rng, max_degree=5, max_terms=5)
        for q, p in spec.weyl_pairs:
            if brackets.scaled_commutator(H, spec.gen(q)) != calculus.partial(H, p):
                return False, f"h^-1[H,{spec.generators[q]}] for H = {H}"
            if brackets.scaled_commutator(H, spec.gen(p)) != -calculus.partial(H, q):
                return False, f"h^-1[H,{spec.generators[p]}] for H = {H}"
    return True, "100 random H, N<=3, deg<=5"


def gauge_function(phi: canon.PointMap) -> Scalar:
    """A fixed nontrivial gauge for each corpus map."""
    syms = [phi.ctx.symbol(c) for c in phi.ctx.coordinates]
    f = syms[0] ** 2
    for s in syms[1:]:
        f = f + syms[0] * s
    return f


@_timed(5, "left, right and gauge lifts are canonical")
def criterion_5(rng):
    for case in MAP_CORPUS:
        phi = case.build()
        pairs = {
            "right": canon.lift_right(phi),
            "left": canon.lift_left(phi),
            "gauge": canon.gauge_lift(phi, gauge_function(phi)),
        }
        for kind, pair in pairs.items():
            rep = canon.check_canonical_quantum(pair)
            if not rep.passed:
                return False, f"{case.name}: {kind} lift residual {rep.failures()[0]}"
    return True, f"{len(MAP_CORPUS)} maps x 3 lifts"


def _symmetric_metric(n: int, rng) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = rng.randint(1, 3)
        for j in range(i + 1, n):
            a[i][j] = a[j][i] = rng.randint(-1, 1)
    return a


@_timed(6, "Psi-defect, lr-difference and log-det routes")
def criterion_6(rng):
    for case in MAP_CORPUS:
        phi = case.build()
        if any(psi_d for psi_d in canon.psi_defect(phi).defect):
            return False, f"{case.name}: nonzero Psi-defect residual"
        for a in (canon.identity_metric(phi.n), _symmetric_metric(phi.n, rng)):
            if not canon.lr_difference(phi, a).passed:
                return False, f"{case.name}: lr-difference routes disagree for a = {a}"
        for i in range(phi.n):
            routes = canon.grad_log_det_routes(phi.jacobian, i)
            if not routes["inverse"] == routes["adjugate"] == routes["determinant"]:
                return False, f"{case.name}: grad log det routes disagree at {i}"
    return True, f"{len(MAP_CORPUS)} maps, two metrics each"


@_timed(7, "self-adjointness of mixed Hamiltonians")
def criterion_7(rng):
    for case in MAP_CORPUS:
        phi = case.build()
        mech = canon.mechanical_lr(phi, canon.identity_metric(phi.n))
        if brackets.dagger(mech.H_lr) != mech.H_lr or brackets.dagger(mech.H_rl) != mech.H_rl:
            return False, f"{case.name}: mixed Hamiltonian is not self-adjoint"
        for pl, pr in zip(mech.P_left, mech.P_right):
            if brackets.dagger(pl) != -pr or brackets.dagger(pr) != -pl:
                return False, f"{case.name}: dagger does not swap-negate the lifts"
    polar = next(c for c in MAP_CORPUS if c.name == "polar").build()
    spec = polar.spec
    r_inv = spec.scalar(spec.ctx.symbol("r").inverse())
    p_r = spec.gen("p_r")
    sym = (nc_mul(r_inv, p_r) + nc_mul(p_r, r_inv)).scale(spec.ctx.h)
    left = canon.naive_transformed_hamiltonian(polar, "left").adjoint_defect
    right = canon.naive_transformed_hamiltonian(polar, "right").adjoint_defect
    if not left or left != -sym or right != sym:
        return False, f"naive polar defects {left} / {right}"
    return True, f"{len(MAP_CORPUS)} maps; polar naive defects -/+ h(r^-1 p_r + p_r r^-1)"


@_timed(8, "confluence and algebra laws")
def criterion_8(rng):
    for _ in range(200):
        m = rng.randint(2, 4)
        spec = constant_algebra([f"u{i + 1}" for i in range(m)], random_antisymmetric(m, rng, 3))
        raw = [(rng.randint(-3, 3) or 1, [rng.randrange(m) for _ in range(rng.randint(0, 6))]) for _ in range(3)]
        if normalize(raw, spec) != normalize_randomized(raw, spec, rng):
            return False, f"confluence fails for {raw}"
    specs = [weyl_algebra(2), weyl_algebra(2, representation="constant"), constant_algebra(["a", "b", "c"], [[0, 1, 2], [-1, 0, -1], [-2, 1, 0]])]
    for spec in specs:
        for _ in range(30):
            a, b, c = (random_ncpoly(spec, rng, max_degree=3, max_terms=3) for _ in range(3))
            if nc_mul(nc_mul(a, b), c) != nc_mul(a, nc_mul(b, c)):
                return False, f"associativity fails in {spec.mode}"
            jac = calculus.commutator(calculus.commutator(a, b), c)
            jac = jac + calculus.commutator(calculus.commutator(b, c), a)
            jac = jac + calculus.commutator(calculus.commutator(c, a), b)
            if jac:
                return False, f"Jacobi fails in {spec.mode}"
    # the 1/s! comes from expanding exp(h<lambda, mu>) in the generating relation
    for cij in (1, -2, 3):
        spec = constant_algebra(["v", "u"], [[0, -cij], [cij, 0]])
        u, v = spec.gen("u"), spec.gen("v")
        h = spec.ctx.h
        for n, m in product(range(7), repeat=2):
            lhs = nc_mul(u ** n, v ** m).scale(spec.ctx.one / (_fact(n) * _fact(m)))
            rhs = spec.zero()
            for s in range(min(n, m) + 1):
                coeff = (h * cij) ** s / (_fact(s) * _fact(m - s) * _fact(n - s))
                rhs = rhs + nc_mul(v ** (m - s), u ** (n - s)).scale(coeff)
            if lhs != rhs:
                return False, f"ordered powers fail at n={n}, m={m}, c={cij}"
    return True, "200 randomized normalizations, 90 associativity/Jacobi triples, ordered powers n,m<=6"


def _fact(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@_timed(9, "classical limit is the Poisson bracket")
def criterion_9(rng):
    for _ in range(100):
        spec = weyl_algebra(rng.randint(1, 2))
        H = random_ncpoly(spec, rng, max_degree=5, h_terms=True)
        F = random_ncpoly(spec, rng, max_degree=5, h_terms=True)
        lhs, rhs = brackets.classical_limit_sides(H, F)
        if lhs != rhs:
            return False, f"H = {H}, F = {F}"
    return True, "100 random pairs, N<=2, deg<=5"


@_timed(10, "star product matches operator product")
def criterion_10(rng):
    for _ in range(100):
        spec = weyl_algebra(rng.randint(1, 2))
        a, b, c = (random_symbol(spec, rng) for _ in range(3))
        ab = brackets.star_normal(a, b, spec)
        if brackets.normal_quantize(ab, spec) != nc_mul(brackets.normal_quantize(a, spec), brackets.normal_quantize(b, spec)):
            return False, f"quantization fails for a = {a}, b = {b}"
        if brackets.star_normal(ab, c, spec) != brackets.star_normal(a, brackets.star_normal(b, c, spec), spec):
            return False, f"associativity fails for {a}, {b}, {c}"
    return True, "100 pairs and triples"


@_timed(11, "inverse search on tame maps")
def criterion_11(rng):
    for case in TAME_MAPS:
        res = canon.attempt_inverse(case.build(), 4)
        if not (res.found and res.verified):
            return False, f"{case.name}: {res.describe()}"
    return True, f"{len(TAME_MAPS)} inverses found and verified within degree 4"


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_all(seed: int = 20240601) -> list[Result]:
    return [c(seed) for c in CRITERIA]
