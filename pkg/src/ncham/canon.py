"""Point transformations and their lifts to momenta.

A :class:`PointMap` sends coordinates ``q`` to ``Q(q)``.  Its momenta are
lifted through the inverse Jacobian in three ways:

* classically, ``P = (J^-1)^t p`` on commutative symbols;
* right form, coefficients left of momenta: ``P_i = sum (J^-1)_ai p_a``;
* left form, momenta left of coefficients: ``P_i = sum p_a (J^-1)_ai``.

``ln det J`` never appears; only its gradient, a rational scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .brackets import dagger, poisson
from .calculus import cyclic_variational, op_partial
from .ncalg import AlgebraSpec, NCPoly, commutator, nc_mul, weyl_algebra
from .scalars import Scalar, ScalarContext, ScalarError, multi_indices


class CanonError(ValueError):
    pass


# -- matrices of scalars --------------------------------------------------------------


def bareiss_det(m: Sequence[Sequence[Scalar]], zero: Scalar) -> Scalar:
    """Determinant by fraction-free elimination with row pivoting."""
    n = len(m)
    if n == 0:
        return zero + 1
    a = [list(row) for row in m]
    sign = 1
    prev = zero + 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def adjugate(m: Sequence[Sequence[Scalar]], zero: Scalar) -> list[list[Scalar]]:
    n = len(m)
    if n == 1:
        return [[zero + 1]]
    adj = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(m) if r != i]
            cof = bareiss_det(minor, zero)
            # adj is the transposed cofactor matrix
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def mat_mul(a, b, zero):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), zero) for j in range(m)] for i in range(n)]


def trace(a, zero):
    return sum((a[i][i] for i in range(len(a))), zero)


@dataclass
class JacobianMatrix:
    """``J_ij = dQ_i/dq_j`` with cached determinant, adjugate and inverse."""

    entries: list
    ctx: ScalarContext
    coordinates: tuple

    def __post_init__(self):
        zero = self.ctx.zero
        self.det = bareiss_det(self.entries, zero)
        if not self.det:
            raise CanonError("the Jacobian determinant vanishes: the map is not invertible")
        self.adj = adjugate(self.entries, zero)
        inv_det = self.det.inverse()
        self.inverse = [[x * inv_det for x in row] for row in self.adj]
        self._d_cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def derivative(self, k: int) -> list[list[Scalar]]:
        """``dJ/dq_k`` entrywise."""
        if k not in self._d_cache:
            c = self.coordinates[k]
            self._d_cache[k] = [[x.diff(c) for x in row] for row in self.entries]
        return self._d_cache[k]

    def inverse_derivative(self, k: int) -> list[list[Scalar]]:
        c = self.coordinates[k]
        return [[x.diff(c) for x in row] for row in self.inverse]

    def adj_identity_residual(self) -> list[list[Scalar]]:
        """``adj(J) J - det(J) 1`` (zero expected)."""
        zero = self.ctx.zero
        prod = mat_mul(self.adj, self.entries, zero)
        return [[prod[i][j] - (self.det if i == j else zero) for j in range(self.n)] for i in range(self.n)]

    def rows_text(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


class PointMap:
    """``q -> Q(q)``, one scalar per target coordinate."""

    def __init__(self, ctx: ScalarContext, targets: Sequence, names: Sequence[str] | None = None):
        self.ctx = ctx
        self.targets = tuple(ctx.coerce(t) for t in targets)
        n = len(ctx.coordinates)
        if len(self.targets) != n:
            raise CanonError(f"a point map needs {n} target expressions, got {len(self.targets)}")
        self.names = tuple(names) if names else tuple(f"Q{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise CanonError("one name per target expression")
        for t in self.targets:
            if t.depends_on("h"):
                raise CanonError("point maps must not depend on h")
        self.jacobian = jacobian_of(self)
        self._spec = None

    @property
    def n(self) -> int:
        return len(self.targets)

    @property
    def spec(self) -> AlgebraSpec:
        """Weyl algebra over the source coordinates."""
        if self._spec is None:
            self._spec = weyl_algebra(ctx=self.ctx)
        return self._spec

    def target_context(self) -> ScalarContext:
        return ScalarContext(self.names, name="targets")

    def compose(self, expr) -> Scalar:
        """``a(Q(q))`` for an expression ``a`` in the target names."""
        tctx = self.target_context()
        a = tctx.parse(expr) if isinstance(expr, str) else expr.to_context(tctx) if expr.ctx != tctx else expr
        try:
            return a.subs(dict(zip(self.names, self.targets)), self.ctx)
        except ScalarError as exc:
            raise CanonError(f"composition with the map does not reduce in the scalar context: {exc}") from None

    def __repr__(self):
        body = ", ".join(f"{n} = {t}" for n, t in zip(self.names, self.targets))
        return f"PointMap({body})"


def jacobian_of(phi: PointMap) -> JacobianMatrix:
    coords = phi.ctx.coordinates
    entries = [[t.diff(c) for c in coords] for t in phi.targets]
    return JacobianMatrix(entries, phi.ctx, coords)


def jacobian(phi: PointMap) -> JacobianMatrix:
    return phi.jacobian


# -- candidate pairs and checks ------------------------------------------------------


@dataclass
class CandidatePair:
    """``(P_1..P_N, Q_1..Q_N)``: quantum elements or commutative symbols."""

    P: list
    Q: list
    kind: str  # "quantum" or "classical"
    spec: AlgebraSpec

    def __post_init__(self):
        if len(self.P) != len(self.Q):
            raise CanonError("P and Q need the same length")
        if self.kind not in ("quantum", "classical"):
            raise CanonError("kind is quantum or classical")


@dataclass
class CanonicalReport:
    kind: str
    residuals: list = field(default_factory=list)  # (label, value) with value zero when satisfied

    @property
    def passed(self) -> bool:
        return all(not v for _, v in self.residuals)

    def failures(self):
        return [(label, v) for label, v in self.residuals if v]


def check_canonical_quantum(cand: CandidatePair) -> CanonicalReport:
    """Residuals of ``[Q_i,Q_j]``, ``[P_i,P_j]`` and ``[P_i,Q_j] - h delta_ij``."""
    spec = cand.spec
    P = [spec.coerce(x) for x in cand.P]
    Q = [spec.coerce(x) for x in cand.Q]
    n = len(P)
    h = spec.ctx.h
    rep = CanonicalReport("quantum")
    for i in range(n):
        for j in range(i + 1, n):
            rep.residuals.append((f"[Q{i + 1},Q{j + 1}]", commutator(Q[i], Q[j])))
            rep.residuals.append((f"[P{i + 1},P{j + 1}]", commutator(P[i], P[j])))
    for i in range(n):
        for j in range(n):
            r = commutator(P[i], Q[j])
            if i == j:
                r = r - h
            rep.residuals.append((f"[P{i + 1},Q{j + 1}] - h*d{i + 1}{j + 1}", r))
    return rep


def check_canonical_classical(cand: CandidatePair) -> CanonicalReport:
    """Residuals of ``{Q_i,Q_j}``, ``{P_i,P_j}`` and ``{P_i,Q_j} - delta_ij``."""
    spec = cand.spec
    sctx = spec.symbol_context()
    P = [sctx.coerce(x) for x in cand.P]
    Q = [sctx.coerce(x) for x in cand.Q]
    n = len(P)
    rep = CanonicalReport("classical")
    for i in range(n):
        for j in range(i + 1, n):
            rep.residuals.append((f"{{Q{i + 1},Q{j + 1}}}", poisson(Q[i], Q[j], spec)))
            rep.residuals.append((f"{{P{i + 1},P{j + 1}}}", poisson(P[i], P[j], spec)))
    for i in range(n):
        for j in range(n):
            r = poisson(P[i], Q[j], spec)
            if i == j:
                r = r - 1
            rep.residuals.append((f"{{P{i + 1},Q{j + 1}}} - d{i + 1}{j + 1}", r))
    return rep


# -- lifts ---------------------------------------------------------------------------


def _quantum_Q(phi: PointMap) -> list[NCPoly]:
    return [phi.spec.scalar(t) for t in phi.targets]


def classical_lift(phi: PointMap) -> CandidatePair:
    spec = phi.spec
    sctx = spec.symbol_context()
    inv = phi.jacobian.inverse
    moms = [sctx.symbol(spec.generators[p]) for p in spec.momenta]
    P = []
    for i in range(phi.n):
        P.append(sum((inv[a][i].to_context(sctx) * moms[a] for a in range(phi.n)), sctx.zero))
    Q = [t.to_context(sctx) for t in phi.targets]
    return CandidatePair(P, Q, "classical", spec)


def lift_right(phi: PointMap) -> CandidatePair:
    """``P_i = sum_a (J^-1)_ai p_a``."""
    spec = phi.spec
    inv = phi.jacobian.inverse
    P = []
    for i in range(phi.n):
        terms = {}
        for a in range(phi.n):
            if inv[a][i]:
                terms[(spec.momenta[a],)] = inv[a][i]
        P.append(NCPoly(spec, terms))
    return CandidatePair(P, _quantum_Q(phi), "quantum", spec)


def lift_left(phi: PointMap) -> CandidatePair:
    """``P_i = sum_a p_a (J^-1)_ai``, normalized."""
    spec = phi.spec
    inv = phi.jacobian.inverse
    P = []
    for i in range(phi.n):
        total = spec.zero()
        for a in range(phi.n):
            total = total + nc_mul(spec.gen(spec.momenta[a]), spec.scalar(inv[a][i]))
        P.append(total)
    return CandidatePair(P, _quantum_Q(phi), "quantum", spec)


def gauge_lift(phi: PointMap, f, quantum: bool = True) -> CandidatePair:
    """``P = (J^-1)^t (p - grad f)``; the quantum version keeps coefficients left."""
    f = phi.ctx.coerce(f)
    if f.depends_on("h"):
        raise CanonError("the gauge function must not depend on h")
    grad = [f.diff(c) for c in phi.ctx.coordinates]
    inv = phi.jacobian.inverse
    if not quantum:
        base = classical_lift(phi)
        sctx = phi.spec.symbol_context()
        P = [
            base.P[i] - sum((inv[a][i] * grad[a] for a in range(phi.n)), phi.ctx.zero).to_context(sctx)
            for i in range(phi.n)
        ]
        return CandidatePair(P, base.Q, "classical", phi.spec)
    base = lift_right(phi)
    P = [base.P[i] - sum((inv[a][i] * grad[a] for a in range(phi.n)), phi.ctx.zero) for i in range(phi.n)]
    return CandidatePair(P, base.Q, "quantum", phi.spec)


# -- log-det identities ------------------------------------------------------------------


def grad_log_det(J: JacobianMatrix, i: int) -> Scalar:
    """``(ln det J),_i = Tr(J^-1 J,_i)``."""
    return trace(mat_mul(J.inverse, J.derivative(i), J.ctx.zero), J.ctx.zero)


def grad_log_det_routes(J: JacobianMatrix, i: int) -> dict[str, Scalar]:
    """The gradient by the inverse, the adjugate and the determinant derivative."""
    zero = J.ctx.zero
    return {
        "inverse": grad_log_det(J, i),
        "adjugate": trace(mat_mul(J.adj, J.derivative(i), zero), zero) / J.det,
        "determinant": J.det.diff(J.coordinates[i]) / J.det,
    }


@dataclass
class PsiDefect:
    psi: list  # normalized sum (J^-1)_ab p_a J_bi
    expected: list  # p_i + h (ln det J),_i
    defect: list  # psi - expected


def psi_defect(phi: PointMap) -> PsiDefect:
    spec = phi.spec
    J = phi.jacobian
    h = spec.ctx.h
    psi, expected = [], []
    for i in range(phi.n):
        total = spec.zero()
        for a in range(phi.n):
            for b in range(phi.n):
                if J.inverse[a][b] and J.entries[b][i]:
                    total = total + nc_mul(
                        nc_mul(spec.scalar(J.inverse[a][b]), spec.gen(spec.momenta[a])), spec.scalar(J.entries[b][i])
                    )
        psi.append(total)
        expected.append(spec.gen(spec.momenta[i]) + h * grad_log_det(J, i))
    return PsiDefect(psi, expected, [x - y for x, y in zip(psi, expected)])


def lift_difference_residual(phi: PointMap) -> list[NCPoly]:
    """``P^r_i - P^l_i - h sum_a (J^-1)_ai (ln det J),_a`` (zero expected)."""
    J = phi.jacobian
    h = phi.ctx.h
    right, left = lift_right(phi), lift_left(phi)
    out = []
    for i in range(phi.n):
        corr = sum((J.inverse[a][i] * grad_log_det(J, a) for a in range(phi.n)), phi.ctx.zero)
        out.append(right.P[i] - left.P[i] - h * corr)
    return out


# -- mechanical Hamiltonians ------------------------------------------------------------


def _in_source(phi: PointMap, x) -> Scalar:
    if isinstance(x, str) or (isinstance(x, Scalar) and x.ctx != phi.ctx):
        return phi.compose(x)
    return phi.ctx.coerce(x)


def _matrix_in_source(phi: PointMap, a) -> list[list[Scalar]]:
    n = phi.n
    if len(a) != n or any(len(row) != n for row in a):
        raise CanonError(f"the metric must be {n}x{n}")
    out = [[_in_source(phi, x) for x in row] for row in a]
    for i in range(n):
        for j in range(n):
            if out[i][j] != out[j][i]:
                raise CanonError("the metric must be symmetric")
    return out


@dataclass
class MechanicalPair:
    H_lr: NCPoly
    H_rl: NCPoly
    P_left: list
    P_right: list


def mechanical_lr(phi: PointMap, a, V=None) -> MechanicalPair:
    """``H^lr = sum P^l_i a^ij(Q) P^r_j + V(Q)`` and ``H^rl`` with the lifts swapped.

    Entries of ``a`` and ``V`` given as text are read in the target names and
    composed with the map; scalars of the source context are used as they are.
    """
    spec = phi.spec
    A = _matrix_in_source(phi, a)
    v = spec.ctx.zero
    if V is not None:
        v = _in_source(phi, V)
    left, right = lift_left(phi).P, lift_right(phi).P
    H_lr = spec.scalar(v)
    H_rl = spec.scalar(v)
    for i in range(phi.n):
        for j in range(phi.n):
            if A[i][j]:
                aij = spec.scalar(A[i][j])
                H_lr = H_lr + nc_mul(nc_mul(left[i], aij), right[j])
                H_rl = H_rl + nc_mul(nc_mul(right[i], aij), left[j])
    return MechanicalPair(H_lr, H_rl, left, right)


def identity_metric(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class NaiveHamiltonian:
    which: str
    H: NCPoly
    adjoint_defect: NCPoly  # H - H^dagger


def naive_transformed_hamiltonian(phi: PointMap, which: str) -> NaiveHamiltonian:
    """``sum_i P_i^2`` with one lift, normalized, and its failure of self-adjointness."""
    if which == "left":
        P = lift_left(phi).P
    elif which == "right":
        P = lift_right(phi).P
    else:
        raise CanonError("which is 'left' or 'right'")
    H = phi.spec.zero()
    for x in P:
        H = H + nc_mul(x, x)
    return NaiveHamiltonian(which, H, H - dagger(H))


@dataclass
class LRDifference:
    direct: NCPoly  # h^-2 (H^lr - H^rl)
    closed_form: NCPoly  # sum (J^-1)_bi ((ln det J),_psi (J^-1)_psi_j a^ij),_b
    residual: NCPoly
    inverse_divergence: list  # -sum_mu (J^-1)_{mu j, mu}
    log_det_contraction: list  # sum_psi (ln det J),_psi (J^-1)_psi_j

    @property
    def passed(self) -> bool:
        return not self.residual and self.inverse_divergence == self.log_det_contraction


def lr_difference(phi: PointMap, a) -> LRDifference:
    spec = phi.spec
    ctx = phi.ctx
    J = phi.jacobian
    n = phi.n
    A = _matrix_in_source(phi, a)
    mech = mechanical_lr(phi, A)
    direct = (mech.H_lr - mech.H_rl).scale(ctx.h ** -2)
    grads = [grad_log_det(J, k) for k in range(n)]
    contraction = [sum((grads[s] * J.inverse[s][j] for s in range(n)), ctx.zero) for j in range(n)]
    closed = ctx.zero
    for b in range(n):
        coord = ctx.coordinates[b]
        for i in range(n):
            if not J.inverse[b][i]:
                continue
            inner = sum((contraction[j] * A[i][j] for j in range(n)), ctx.zero)
            closed = closed + J.inverse[b][i] * inner.diff(coord)
    divergence = []
    for j in range(n):
        total = ctx.zero
        for mu in range(n):
            total = total - J.inverse[mu][j].diff(ctx.coordinates[mu])
        divergence.append(total)
    closed_elem = spec.scalar(closed)
    return LRDifference(direct, closed_elem, direct - closed_elem, divergence, contraction)


# -- inverse search -------------------------------------------------------------------


@dataclass
class InverseResult:
    found: bool
    degree_bound: int
    inverse: list | None  # scalars in the target names
    target_names: tuple
    verified: bool = False
    source_names: tuple = ()

    def describe(self) -> str:
        if not self.found:
            return f"none up to degree {self.degree_bound}"
        return ", ".join(f"{n} -> {g}" for n, g in zip(self.source_names, self.inverse))


def _as_polynomial(s: Scalar, variables: Sequence[str]) -> dict:
    """``{exponent vector over variables: Fraction}``; rejects anything else."""
    ctx = s.ctx
    if not s.den.is_ground:
        raise CanonError("inverse search needs polynomial maps")
    den = int(s.den.LC)
    idx = [ctx._index[v] for v in variables]
    others = [i for i in range(len(ctx.symbols)) if i not in idx]
    out = {}
    for mon, c in s.num.items():
        if any(mon[i] for i in others):
            raise CanonError("inverse search needs maps polynomial in the coordinates only")
        out[tuple(mon[i] for i in idx)] = Fraction(int(c), den)
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _monomials_up_to(nvars: int, bound: int) -> list[tuple[int, ...]]:
    mons = [m for m in multi_indices([bound] * nvars) if sum(m) <= bound]
    # low total degree first, then lex-least
    mons.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return mons


def _qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def attempt_inverse_polys(polys: Sequence[Scalar], variables: Sequence[str], degree_bound: int, target_names):
    """Search ``G`` with ``deg G <= degree_bound`` and ``G(F) = variables``."""
    if degree_bound < 1:
        raise CanonError("degree bound must be at least 1")
    n = len(variables)
    if len(polys) != n:
        raise CanonError("need as many component polynomials as variables")
    F = [_as_polynomial(p, variables) for p in polys]
    mons = _monomials_up_to(n, degree_bound)
    unit = {(0,) * n: Fraction(1)}
    powers = [[unit] for _ in range(n)]
    columns = []
    for m in mons:
        col = unit
        for k, e in enumerate(m):
            while len(powers[k]) <= e:
                powers[k].append(_poly_mul(powers[k][-1], F[k]))
            col = _poly_mul(col, powers[k][e])
        columns.append(col)
    rows = sorted({mon for col in columns for mon in col})
    row_index = {mon: r for r, mon in enumerate(rows)}
    tctx = ScalarContext(tuple(target_names), name="inverse")
    tsyms = [tctx.symbol(t) for t in target_names]
    inverse = []
    for i in range(n):
        target = tuple(1 if k == i else 0 for k in range(n))
        rhs = [Fraction(0)] * len(rows)
        if target not in row_index:
            return InverseResult(False, degree_bound, None, tuple(target_names))
        rhs[row_index[target]] = Fraction(1)
        aug = [[_qq(col.get(mon, 0)) for col in columns] + [_qq(rhs[r])] for r, mon in enumerate(rows)]
        M = DomainMatrix(aug, (len(rows), len(columns) + 1), QQ)
        R, pivots = M.rref()
        if len(columns) in pivots:
            return InverseResult(False, degree_bound, None, tuple(target_names))
        Rl = R.to_list()
        coeffs = [Fraction(0)] * len(columns)
        for r, pc in enumerate(pivots):
            v = Rl[r][-1]
            coeffs[pc] = Fraction(int(v.numerator), int(v.denominator))
        g = tctx.zero
        for m, c in zip(mons, coeffs):
            if c:
                term = tctx.coerce(c)
                for k, e in enumerate(m):
                    if e:
                        term = term * tsyms[k] ** e
                g = g + term
        inverse.append(g)
    return InverseResult(True, degree_bound, inverse, tuple(target_names))


def attempt_inverse(obj, degree_bound: int) -> InverseResult:
    """Inverse search for a polynomial :class:`PointMap` or a classical candidate pair."""
    if isinstance(obj, PointMap):
        variables = obj.ctx.coordinates
        polys = obj.targets
        names = obj.names
        source_ctx = obj.ctx
    elif isinstance(obj, CandidatePair):
        if obj.kind != "classical":
            raise CanonError("inverse search covers point maps and classical pairs")
        sctx = obj.spec.symbol_context()
        qs = tuple(obj.spec.generators[q] for q in obj.spec.positions)
        ps = tuple(obj.spec.generators[p] for p in obj.spec.momenta)
        variables = qs + ps
        polys = [sctx.coerce(x) for x in list(obj.Q) + list(obj.P)]
        names = tuple(f"Q{i + 1}" for i in range(len(qs))) + tuple(f"P{i + 1}" for i in range(len(ps)))
        source_ctx = sctx
    else:
        raise CanonError("expected a point map or a candidate pair")
    result = attempt_inverse_polys(polys, variables, degree_bound, names)
    result.source_names = tuple(variables)
    if result.found:
        mapping = dict(zip(names, polys))
        result.verified = all(
            g.subs(mapping, source_ctx) == source_ctx.symbol(v) for g, v in zip(result.inverse, variables)
        )
    return result


# -- noncommutative Jacobian -----------------------------------------------------------


class NCJacobian:
    """Operator-valued Jacobian ``x -> d~F_i/dx_j (x)`` and the cyclic matrix."""

    def __init__(self, F: Sequence[NCPoly]):
        if not F:
            raise CanonError("need at least one component")
        spec = F[0].spec
        if spec.mode != "free":
            raise CanonError("the noncommutative Jacobian is defined on free algebras")
        for x in F:
            if x.spec != spec:
                raise CanonError("components must share one algebra")
        self.spec = spec
        self.F = list(F)
        self.variational = [[cyclic_variational(f, j) for j in range(spec.ngens)] for f in self.F]

    def operator(self, i: int, j: int):
        f = self.F[i]
        return lambda x: op_partial(f, j, x)

    def apply(self, i: int, j: int, x: NCPoly) -> NCPoly:
        return op_partial(self.F[i], j, x)


def nc_jacobian(F: Sequence[NCPoly]) -> NCJacobian:
    return NCJacobian(F)


__all__ = [
    "CandidatePair",
    "CanonError",
    "CanonicalReport",
    "InverseResult",
    "JacobianMatrix",
    "LRDifference",
    "MechanicalPair",
    "NCJacobian",
    "NaiveHamiltonian",
    "PointMap",
    "PsiDefect",
    "adjugate",
    "attempt_inverse",
    "attempt_inverse_polys",
    "bareiss_det",
    "check_canonical_classical",
    "check_canonical_quantum",
    "classical_lift",
    "gauge_lift",
    "grad_log_det",
    "grad_log_det_routes",
    "identity_metric",
    "jacobian",
    "lift_difference_residual",
    "lift_left",
    "lift_right",
    "lr_difference",
    "mechanical_lr",
    "naive_transformed_hamiltonian",
    "nc_jacobian",
    "psi_defect",
]
