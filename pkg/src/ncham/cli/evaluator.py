"""Sequential evaluation of scripts into reports.

Names in expressions are read according to the argument they fill:

``alg``
    generators, context symbols and ``h`` build algebra elements;
``sym``
    every generator is a commuting symbol (Poisson brackets, star products);
``scalar``
    coordinates, function symbols and ``h`` of the active scalar context.

Bindings made with ``let`` keep the type of their value.  A failing
statement leaves all earlier state untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import brackets, calculus, canon
from ..ncalg import AlgebraError, AlgebraSpec, NCPoly, constant_algebra, free_algebra, weyl_algebra
from ..scalars import Scalar, ScalarContext, ScalarError, integer_exponent, polar_context
from ..syntax import BinOp, Bracket, Call, Name, Neg, Num, ParseError, unparse
from .parser import (
    AlgebraStmt,
    Command,
    ContextStmt,
    FunctionStmt,
    LetStmt,
    MapStmt,
    MatrixLit,
    PrintStmt,
    RelationStmt,
    Script,
    TupleLit,
    format_statement,
)
from .report import Entry, Report


class EvalError(ValueError):
    pass


_ERRORS = (EvalError, AlgebraError, ScalarError, canon.CanonError, ZeroDivisionError, ParseError)


@dataclass
class State:
    coords: tuple | None = None
    functions: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    polar: bool = False
    ctx: ScalarContext | None = None
    spec: AlgebraSpec | None = None
    point_map: canon.PointMap | None = None
    bindings: dict = field(default_factory=dict)

    def copy(self) -> "State":
        return State(
            self.coords,
            {k: dict(v) for k, v in self.functions.items()},
            list(self.relations),
            self.polar,
            self.ctx,
            self.spec,
            self.point_map,
            dict(self.bindings),
        )


def render(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(render(v) for v in value) + ")"
    return str(value)


def is_zero(value) -> bool:
    if isinstance(value, (list, tuple)):
        return all(is_zero(v) for v in value)
    if isinstance(value, dict):
        return not value
    return not value


class Evaluator:
    """Evaluates statements against a :class:`State`, one at a time."""

    def __init__(self):
        self.state = State()
        self.index = 0

    # -- driver -----------------------------------------------------------------

    def run(self, script: Script) -> Report:
        report = Report()
        for stmt in script.statements:
            report.entries.append(self.execute(stmt))
        return report

    def execute(self, stmt) -> Entry:
        self.index += 1
        entry = Entry(self.index, getattr(stmt, "line", 0), format_statement(stmt))
        trial = self.state.copy()
        try:
            self._dispatch(trial, stmt, entry)
        except _ERRORS as exc:
            entry.status = "error"
            entry.outputs = []
            entry.message = str(exc)
            return entry
        except RecursionError:
            entry.status = "error"
            entry.outputs = []
            entry.message = "expression nests too deeply"
            return entry
        self.state = trial
        return entry

    def _dispatch(self, st: State, stmt, entry: Entry):
        if isinstance(stmt, ContextStmt):
            return self._context(st, stmt, entry)
        if isinstance(stmt, FunctionStmt):
            if st.coords is None or st.polar:
                raise EvalError("declare coordinates with 'context coords' before function symbols")
            table = {}
            for coord, expr in stmt.table:
                table[coord] = unparse(expr)
            st.functions[stmt.name] = table
            return self._rebuild(st, entry)
        if isinstance(stmt, RelationStmt):
            if st.coords is None or st.polar:
                raise EvalError("declare coordinates with 'context coords' before relations")
            st.relations.append((unparse(stmt.head), unparse(stmt.replacement)))
            return self._rebuild(st, entry)
        if isinstance(stmt, AlgebraStmt):
            return self._algebra(st, stmt, entry)
        if isinstance(stmt, LetStmt):
            value = self.eval(st, stmt.expr, "alg")
            st.bindings[stmt.name] = value
            entry.outputs.append((stmt.name, render(value)))
            return
        if isinstance(stmt, PrintStmt):
            entry.outputs.append(("", render(self.eval(st, stmt.expr, "alg"))))
            return
        if isinstance(stmt, MapStmt):
            return self._map(st, stmt, entry)
        if isinstance(stmt, Command):
            handler = getattr(self, f"_cmd_{stmt.name}")
            return handler(st, stmt, entry)
        raise EvalError(f"unknown statement {stmt!r}")

    # -- declarations ------------------------------------------------------------

    def _context(self, st: State, stmt: ContextStmt, entry: Entry):
        st.functions, st.relations = {}, []
        st.spec = None
        st.point_map = None
        if stmt.kind == "polar":
            st.polar, st.coords = True, None
            st.ctx = polar_context()
        else:
            st.polar, st.coords = False, tuple(stmt.names)
            st.ctx = ScalarContext(st.coords)
        entry.outputs.append(("", _describe_ctx(st.ctx)))

    def _rebuild(self, st: State, entry: Entry):
        st.ctx = ScalarContext(st.coords, st.functions, st.relations)
        problems = st.ctx.self_check()
        st.spec = None
        st.point_map = None
        entry.outputs.append(("", _describe_ctx(st.ctx)))
        if problems:
            raise EvalError("context self-check failed: " + "; ".join(problems))

    def _algebra(self, st: State, stmt: AlgebraStmt, entry: Entry):
        if stmt.kind == "free":
            st.spec = free_algebra(stmt.names, st.ctx)
        elif stmt.kind == "commutator":
            c = [[self._constant(st, e) for e in row] for row in stmt.c.rows]
            st.spec = constant_algebra(stmt.names, c, st.ctx)
        else:
            rep = "constant" if stmt.constant else "diffop"
            if stmt.n is not None:
                if st.ctx is not None and st.ctx.coordinates:
                    raise EvalError("'algebra weyl n=..' makes its own coordinates; drop n to use the declared context")
                st.spec = weyl_algebra(stmt.n, representation=rep)
            else:
                if st.ctx is None:
                    raise EvalError("'algebra weyl' needs n=INT or a declared context")
                st.spec = weyl_algebra(ctx=st.ctx, representation=rep)
        # redeclaring the map's own algebra keeps the map
        if st.point_map is not None and st.spec != st.point_map.spec:
            st.point_map = None
        entry.outputs.append(("", f"algebra {st.spec.mode}: {', '.join(st.spec.generators)}"))

    def _constant(self, st: State, expr):
        ctx = st.ctx or ScalarContext(())
        v = ctx.evaluate(expr)
        if not v.is_constant():
            raise EvalError(f"{unparse(expr)} is not a constant")
        return v.to_fraction()

    def _map(self, st: State, stmt: MapStmt, entry: Entry):
        ctx = self._scalar_ctx(st)
        names = [n for n, _ in stmt.pairs]
        targets = [self._as_scalar(ctx, self.eval(st, e, "scalar")) for _, e in stmt.pairs]
        phi = canon.PointMap(ctx, targets, names)
        st.point_map = phi
        st.spec = phi.spec
        for n, t in zip(names, phi.targets):
            entry.outputs.append((n, str(t)))
        entry.message = f"algebra {phi.spec.mode}: {', '.join(phi.spec.generators)}"

    # -- helpers -----------------------------------------------------------------

    def _scalar_ctx(self, st: State) -> ScalarContext:
        if st.spec is not None and st.spec.mode == "weyl_diffop":
            return st.spec.ctx
        if st.ctx is not None:
            return st.ctx
        if st.spec is not None:
            return st.spec.ctx
        raise EvalError("no scalar context declared")

    def _need_spec(self, st: State) -> AlgebraSpec:
        if st.spec is None:
            raise EvalError("no algebra declared")
        return st.spec

    def _need_map(self, st: State) -> canon.PointMap:
        if st.point_map is None:
            raise EvalError("no point map declared")
        return st.point_map

    def _as_scalar(self, ctx: ScalarContext, v) -> Scalar:
        if isinstance(v, Scalar):
            return v if v.ctx == ctx else v.to_context(ctx)
        if isinstance(v, NCPoly) and v.is_scalar() and v.spec.ctx == ctx:
            return v.scalar_value()
        raise EvalError(f"expected a scalar, got {render(v)}")

    def _as_alg(self, spec: AlgebraSpec, v) -> NCPoly:
        if isinstance(v, NCPoly):
            if v.spec != spec:
                raise EvalError("element belongs to a different algebra")
            return v
        if isinstance(v, Scalar):
            if v.ctx == spec.ctx:
                return spec.scalar(v)
            if v.ctx == spec.symbol_context():
                raise EvalError("a commutative symbol cannot be used as an algebra element; use quantize()")
            return spec.scalar(v.to_context(spec.ctx))
        raise EvalError(f"expected an algebra element, got {render(v)}")

    def _as_sym(self, spec: AlgebraSpec, v) -> Scalar:
        sctx = spec.symbol_context()
        if isinstance(v, Scalar):
            return v if v.ctx == sctx else v.to_context(sctx)
        if isinstance(v, NCPoly):
            raise EvalError("an algebra element cannot be used as a symbol; use smbl()")
        raise EvalError(f"expected a symbol, got {render(v)}")

    def _generator(self, st: State, expr) -> int:
        spec = self._need_spec(st)
        if not isinstance(expr, Name):
            raise EvalError("expected a generator name")
        return spec.index(expr.id)

    def _coordinate(self, st: State, expr, ctx: ScalarContext) -> str:
        if not isinstance(expr, Name) or expr.id not in ctx.coordinates:
            raise EvalError(f"expected a coordinate of {ctx.coordinates}")
        return expr.id

    # -- expressions ---------------------------------------------------------------

    def eval(self, st: State, expr, mode: str):
        if isinstance(expr, Num):
            return self._literal(st, expr.value, mode)
        if isinstance(expr, Name):
            return self._name(st, expr.id, mode)
        if isinstance(expr, Neg):
            return -self.eval(st, expr.operand, mode)
        if isinstance(expr, BinOp):
            left = self.eval(st, expr.left, mode)
            if expr.op == "^":
                n = integer_exponent(expr.right)
                if isinstance(left, NCPoly) and n < 0 and not left.is_scalar():
                    raise EvalError("negative powers need a scalar base")
                return left ** n
            right = self.eval(st, expr.right, mode)
            try:
                if expr.op == "+":
                    out = left + right
                elif expr.op == "-":
                    out = left - right
                elif expr.op == "*":
                    out = left * right
                else:
                    out = left / right
            except TypeError:
                out = NotImplemented
            if out is NotImplemented:
                raise EvalError(f"cannot combine {render(left)} and {render(right)} with '{expr.op}'")
            return out
        if isinstance(expr, Bracket):
            spec = self._need_spec(st)
            if expr.kind == "comm":
                a = self._as_alg(spec, self.eval(st, expr.left, "alg"))
                b = self._as_alg(spec, self.eval(st, expr.right, "alg"))
                return calculus.commutator(a, b)
            a = self._as_sym(spec, self.eval(st, expr.left, "sym"))
            b = self._as_sym(spec, self.eval(st, expr.right, "sym"))
            return brackets.poisson(a, b, spec)
        if isinstance(expr, Call):
            fn = FUNCTIONS.get(expr.func)
            if fn is None:
                raise EvalError(f"unknown function {expr.func!r}")
            return fn(self, st, expr.args)
        raise EvalError(f"unsupported expression {unparse(expr)}")

    def _literal(self, st: State, value: int, mode: str):
        if mode == "sym":
            return self._need_spec(st).symbol_context().coerce(value)
        if mode == "scalar":
            return self._scalar_ctx(st).coerce(value)
        if st.spec is not None:
            return st.spec.scalar(value)
        return self._scalar_ctx(st).coerce(value)

    def _name(self, st: State, name: str, mode: str):
        if name in st.bindings:
            v = st.bindings[name]
            if mode == "sym" and st.spec is not None:
                return self._as_sym(st.spec, v)
            return v
        if mode == "sym":
            sctx = self._need_spec(st).symbol_context()
            if sctx.has_symbol(name):
                return sctx.symbol(name)
        elif mode == "scalar":
            ctx = self._scalar_ctx(st)
            if ctx.has_symbol(name):
                return ctx.symbol(name)
        else:
            spec = st.spec
            if spec is not None:
                if name in spec.generators:
                    return spec.gen(name)
                if spec.ctx.has_symbol(name):
                    return spec.scalar(spec.ctx.symbol(name))
            else:
                ctx = self._scalar_ctx(st)
                if ctx.has_symbol(name):
                    return ctx.symbol(name)
        raise EvalError(f"unknown identifier {name!r}")

    def arg(self, st: State, args, i: int, kind: str):
        if i >= len(args):
            raise EvalError("missing argument")
        expr = args[i]
        if kind == "alg":
            return self._as_alg(self._need_spec(st), self.eval(st, expr, "alg"))
        if kind == "sym":
            return self._as_sym(self._need_spec(st), self.eval(st, expr, "sym"))
        if kind == "scalar":
            v = self.eval(st, expr, "scalar")
            if isinstance(v, Scalar):
                return v
            return self._as_scalar(self._scalar_ctx(st), v)
        if kind == "gen":
            return self._generator(st, expr)
        if kind == "int":
            return integer_exponent(expr)
        if kind == "any":
            return self.eval(st, expr, "alg")
        raise EvalError(f"bad argument kind {kind}")

    # -- commands -------------------------------------------------------------------

    def _cmd_jacobian(self, st, cmd, entry):
        J = self._need_map(st).jacobian
        for i, row in enumerate(J.rows_text()):
            entry.outputs.append((f"J[{i + 1}]", "(" + ", ".join(row) + ")"))
        entry.outputs.append(("det J", str(J.det)))
        entry.outputs.append(("adj J", render([render(row) for row in J.adj])))

    def _bind_lift(self, st, entry, prefix, pair, names):
        for name, P in zip(names, pair.P):
            key = f"{prefix}_{name}"
            st.bindings[key] = P
            entry.outputs.append((key, str(P)))

    def _cmd_lift(self, st, cmd, entry):
        phi = self._need_map(st)
        which = cmd.words[0] if cmd.words else "right"
        if which == "left":
            self._bind_lift(st, entry, "PL", canon.lift_left(phi), phi.names)
        elif which == "right":
            self._bind_lift(st, entry, "PR", canon.lift_right(phi), phi.names)
        else:
            self._bind_lift(st, entry, "PC", canon.classical_lift(phi), phi.names)

    def _cmd_gauge(self, st, cmd, entry):
        phi = self._need_map(st)
        if not cmd.exprs:
            raise EvalError("gauge needs a function of the coordinates")
        f = self._as_scalar(phi.ctx, self.eval(st, cmd.exprs[0], "scalar"))
        quantum = "classical" not in cmd.words
        pair = canon.gauge_lift(phi, f, quantum=quantum)
        self._bind_lift(st, entry, "PG" if quantum else "PGC", pair, phi.names)

    def _cmd_psi(self, st, cmd, entry):
        phi = self._need_map(st)
        res = canon.psi_defect(phi)
        moms = [phi.spec.generators[p] for p in phi.spec.momenta]
        for m, psi, d in zip(moms, res.psi, res.defect):
            entry.outputs.append((f"Psi({m})", str(psi)))
            entry.outputs.append((f"defect({m})", str(d)))
        self._verdict(entry, all(not d for d in res.defect), "Psi(p) = p + h grad ln det J")

    def _cmd_gradlogdet(self, st, cmd, entry):
        phi = self._need_map(st)
        ok = True
        for i, c in enumerate(phi.ctx.coordinates):
            routes = canon.grad_log_det_routes(phi.jacobian, i)
            entry.outputs.append((f"(ln det J),{c}", str(routes["inverse"])))
            ok = ok and routes["inverse"] == routes["adjugate"] == routes["determinant"]
        self._verdict(entry, ok, "inverse, adjugate and determinant routes agree")

    def _cmd_naive(self, st, cmd, entry):
        phi = self._need_map(st)
        which = cmd.words[0] if cmd.words else "left"
        res = canon.naive_transformed_hamiltonian(phi, which)
        st.bindings[f"H_naive_{which}"] = res.H
        entry.outputs.append((f"H_naive_{which}", str(res.H)))
        entry.outputs.append(("H - dag(H)", str(res.adjoint_defect)))

    def _metric(self, st, phi, value):
        if not isinstance(value, MatrixLit):
            raise EvalError("metric must be a matrix literal")
        tctx = phi.target_context()
        return [[phi.compose(tctx.evaluate(e)) for e in row] for row in value.rows]

    def _cmd_mechanical(self, st, cmd, entry):
        phi = self._need_map(st)
        opts = dict(cmd.options)
        a = self._metric(st, phi, opts.get("a")) if "a" in opts else canon.identity_metric(phi.n)
        V = phi.compose(phi.target_context().evaluate(opts["V"])) if "V" in opts else None
        res = canon.mechanical_lr(phi, a, V)
        st.bindings["H_lr"] = res.H_lr
        st.bindings["H_rl"] = res.H_rl
        entry.outputs.append(("H_lr", str(res.H_lr)))
        entry.outputs.append(("H_rl", str(res.H_rl)))
        ok = brackets.dagger(res.H_lr) == res.H_lr and brackets.dagger(res.H_rl) == res.H_rl
        self._verdict(entry, ok, "both are self-adjoint")

    def _cmd_lrdiff(self, st, cmd, entry):
        phi = self._need_map(st)
        opts = dict(cmd.options)
        a = self._metric(st, phi, opts.get("a")) if "a" in opts else canon.identity_metric(phi.n)
        res = canon.lr_difference(phi, a)
        entry.outputs.append(("direct", str(res.direct)))
        entry.outputs.append(("closed form", str(res.closed_form)))
        entry.outputs.append(("residual", str(res.residual)))
        self._verdict(entry, res.passed, "direct and closed-form routes agree")

    def _cmd_inverse(self, st, cmd, entry):
        opts = dict(cmd.options)
        if "bound" not in opts:
            raise EvalError("inverse needs bound=INT")
        bound = integer_exponent(opts["bound"])
        if "P" in opts or "Q" in opts:
            spec = self._need_spec(st)
            P = [self._as_sym(spec, self.eval(st, e, "sym")) for e in opts["P"].items]
            Q = [self._as_sym(spec, self.eval(st, e, "sym")) for e in opts["Q"].items]
            target = canon.CandidatePair(P, Q, "classical", spec)
        else:
            target = self._need_map(st)
        res = canon.attempt_inverse(target, bound)
        if res.found:
            for name, g in zip(res.source_names, res.inverse):
                entry.outputs.append((name, str(g)))
            self._verdict(entry, res.verified, "G(F) = id verified by substitution")
        else:
            entry.outputs.append(("", res.describe()))
            entry.message = "not a refutation: larger bounds may succeed"

    def _cmd_theta(self, st, cmd, entry):
        opts = dict(cmd.options)
        if "c" not in opts:
            raise EvalError("theta needs c=MATRIX")
        c = [[self._constant(st, e) for e in row] for row in opts["c"].rows]
        s = integer_exponent(opts["s"]) if "s" in opts else 1
        table = brackets.theta_table(c, s)
        for order in range(1, s + 1):
            for (sig, sig2), v in table.at_order(order):
                entry.outputs.append((f"theta[{_mi(sig)}; {_mi(sig2)}]", str(v)))

    def _cmd_ncjacobian(self, st, cmd, entry):
        spec = self._need_spec(st)
        if not cmd.exprs:
            raise EvalError("ncjacobian needs a tuple of components")
        F = [self._as_alg(spec, self.eval(st, e, "alg")) for e in cmd.exprs[0].items]
        jac = canon.nc_jacobian(F)
        names = spec.generators
        x = "X"
        for i, f in enumerate(F):
            for j in range(spec.ngens):
                op = _insertion_text(f, j, spec)
                entry.outputs.append((f"J[{i + 1},{names[j]}]({x})", op))
        for i, row in enumerate(jac.variational):
            entry.outputs.append((f"Jvar[{i + 1}]", render(row)))

    def _verdict(self, entry: Entry, ok: bool, message: str):
        entry.status = "pass" if ok else "fail"
        entry.message = message

    def _cmd_check(self, st, cmd, entry):
        words = set(cmd.words)
        opts = dict(cmd.options)
        if "canonical" in words or ("classical" in words and "P" in opts):
            spec = self._need_spec(st)
            if "P" not in opts or "Q" not in opts:
                raise EvalError("check canonical needs P=(..) and Q=(..)")
            if "classical" in words:
                P = [self._as_sym(spec, self.eval(st, e, "sym")) for e in opts["P"].items]
                Q = [self._as_sym(spec, self.eval(st, e, "sym")) for e in opts["Q"].items]
                rep = canon.check_canonical_classical(canon.CandidatePair(P, Q, "classical", spec))
            else:
                P = [self._as_alg(spec, self.eval(st, e, "alg")) for e in opts["P"].items]
                Q = [self._as_alg(spec, self.eval(st, e, "alg")) for e in opts["Q"].items]
                rep = canon.check_canonical_quantum(canon.CandidatePair(P, Q, "quantum", spec))
            return self._canonical_report(entry, rep)
        if "lift" in words:
            phi = self._need_map(st)
            if "left" in words:
                pair = canon.lift_left(phi)
            elif "classical" in words:
                pair = canon.classical_lift(phi)
            else:
                pair = canon.lift_right(phi)
            check = canon.check_canonical_classical if pair.kind == "classical" else canon.check_canonical_quantum
            return self._canonical_report(entry, check(pair))
        if "gauge" in words:
            phi = self._need_map(st)
            if not cmd.exprs:
                raise EvalError("check gauge needs a function of the coordinates")
            f = self._as_scalar(phi.ctx, self.eval(st, cmd.exprs[0], "scalar"))
            rep = canon.check_canonical_quantum(canon.gauge_lift(phi, f))
            return self._canonical_report(entry, rep)
        if "zero" in words:
            if len(cmd.exprs) != 1:
                raise EvalError("check zero takes one expression")
            v = self.eval(st, cmd.exprs[0], "alg")
            entry.outputs.append(("value", render(v)))
            return self._verdict(entry, is_zero(v), "value is zero")
        if "equal" in words:
            if len(cmd.exprs) != 2:
                raise EvalError("check equal takes two expressions")
            a = self.eval(st, cmd.exprs[0], "alg")
            b = self.eval(st, cmd.exprs[1], "alg")
            diff = a - b
            entry.outputs.append(("difference", render(diff)))
            return self._verdict(entry, is_zero(diff), "sides are equal")
        if "selfadjoint" in words:
            spec = self._need_spec(st)
            H = self._as_alg(spec, self.eval(st, cmd.exprs[0], "alg"))
            d = H - brackets.dagger(H)
            entry.outputs.append(("H - dag(H)", str(d)))
            return self._verdict(entry, not d, "H is self-adjoint")
        raise EvalError("check needs one of: canonical, classical, lift, gauge, zero, equal, selfadjoint")

    def _canonical_report(self, entry: Entry, rep: canon.CanonicalReport):
        for label, v in rep.residuals:
            entry.outputs.append((label, str(v)))
        self._verdict(entry, rep.passed, f"{rep.kind} commutation relations")


def _mi(sigma) -> str:
    return ",".join(str(e) for e in sigma)


def _insertion_text(f: NCPoly, j: int, spec: AlgebraSpec) -> str:
    """Describe ``X -> d~f/du_j (X)`` as a sum of ``left X right`` terms."""
    parts = []
    names = spec.generators
    for left, right in calculus.occurrences(f, j):
        for lw, lc in left.terms.items():
            lt = " ".join(names[g] for g in lw)
            rt = " ".join(names[g] for g in next(iter(right.terms)))
            body = " ".join(x for x in (lt, "X", rt) if x)
            coeff = "" if lc == 1 else ("-" if lc == -1 else f"{lc} " if lc.is_monomial_text() else f"({lc}) ")
            parts.append(coeff + body)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _describe_ctx(ctx: ScalarContext) -> str:
    text = f"context: coordinates {', '.join(ctx.coordinates) or '(none)'}"
    if ctx.function_names:
        text += f"; functions {', '.join(ctx.function_names)}"
    if ctx.relations:
        text += "; relations " + ", ".join(f"{r.var}^{r.power}" for r in ctx.relations)
    return text


# -- function table ------------------------------------------------------------------


def _fn(kinds, impl, varargs: str | None = None):
    def call(ev: Evaluator, st: State, args):
        if varargs is None and len(args) != len(kinds):
            raise EvalError(f"expected {len(kinds)} argument(s), got {len(args)}")
        if varargs is not None and len(args) < len(kinds):
            raise EvalError(f"expected at least {len(kinds)} argument(s)")
        vals = [ev.arg(st, args, i, k) for i, k in enumerate(kinds)]
        rest = [ev.arg(st, args, i, varargs) for i in range(len(kinds), len(args))] if varargs else []
        return impl(ev, st, *vals, *rest)

    return call


def _images(ev, st, imgs):
    spec = ev._need_spec(st)
    if len(imgs) != spec.ngens:
        raise EvalError(f"give one image per generator ({spec.ngens})")
    return calculus.Derivation(spec, dict(enumerate(imgs)))


def _partialm(ev, st, H, *sigma):
    return calculus.partial_multi(H, list(sigma))


def _pair(ev, st, form, *imgs):
    if not isinstance(form, calculus.OneForm):
        raise EvalError("pair expects a 1-form such as d(H)")
    return calculus.pair(form, _images(ev, st, imgs))


def _chaindefect(ev, st, H, alpha, x, *imgs):
    lhs, rhs = calculus.chain_rule_sides(H, list(imgs), alpha, x)
    return lhs - rhs


def _witness(ev, st, a, b):
    spec = ev._need_spec(st)
    qs = [spec.generators[q] for q in spec.positions]
    return brackets.divergence_witness(a, b, qs)


def _diff(ev, st, a, coord_expr):
    ctx = a.ctx
    return a.diff(ev._coordinate(st, coord_expr, ctx))


def _gradlogdet(ev, st, coord_expr):
    phi = ev._need_map(st)
    c = ev._coordinate(st, coord_expr, phi.ctx)
    return canon.grad_log_det(phi.jacobian, phi.ctx.coordinates.index(c))


def _raw(kinds, impl):
    """Function whose trailing arguments are passed unevaluated."""

    def call(ev, st, args):
        if len(args) != len(kinds) + 1:
            raise EvalError(f"expected {len(kinds) + 1} argument(s)")
        vals = [ev.arg(st, args, i, k) for i, k in enumerate(kinds)]
        return impl(ev, st, *vals, args[-1])

    return call


FUNCTIONS = {
    "normalize": _fn(["alg"], lambda ev, st, H: H),
    "comm": _fn(["alg", "alg"], lambda ev, st, a, b: calculus.commutator(a, b)),
    "ad": _fn(["alg", "alg"], lambda ev, st, F, H: calculus.ad(F, H)),
    "adpartial": _fn(["gen", "alg"], lambda ev, st, i, H: calculus.ad_via_partials(i, H)),
    "partial": _fn(["alg", "gen"], lambda ev, st, H, k: calculus.partial(H, k)),
    "opartial": _fn(["alg", "gen", "alg"], lambda ev, st, H, k, x: calculus.op_partial(H, k, x)),
    "partialm": _fn(["alg"], _partialm, varargs="int"),
    "d": _fn(["alg"], lambda ev, st, H: calculus.differential(H)),
    "pair": _fn(["any"], _pair, varargs="alg"),
    "apply": _fn(["alg"], lambda ev, st, H, *imgs: calculus.apply_derivation(_images(ev, st, imgs), H), varargs="alg"),
    "euler": _fn(["alg"], lambda ev, st, H: calculus.apply_derivation(calculus.radial(H.spec), H)),
    "chaindefect": _fn(["alg", "gen", "alg"], _chaindefect, varargs="alg"),
    "cyclic": _fn(["alg", "gen"], lambda ev, st, F, j: calculus.cyclic_variational(F, j)),
    "hcomm": _fn(["alg", "alg"], lambda ev, st, a, b: brackets.scaled_commutator(a, b)),
    "expand_pair": _fn(["alg", "alg"], lambda ev, st, a, b: brackets.bracket_expansion_pair(a, b)),
    "expand_theta": _fn(["alg", "alg"], lambda ev, st, a, b: brackets.bracket_expansion_theta(a, b)),
    "symform": _fn(["alg", "alg"], lambda ev, st, a, b: brackets.symmetric_form(a, b)),
    "dag": _fn(["alg"], lambda ev, st, H: brackets.dagger(H)),
    "res": _fn(["alg"], lambda ev, st, H: brackets.res(H)),
    "resform": _fn(["alg", "alg"], lambda ev, st, a, b: brackets.res_form(a, b)),
    "smbl": _fn(["alg"], lambda ev, st, H: brackets.smbl(H)),
    "sym": _fn(["sym"], lambda ev, st, a: a),
    "quantize": _fn(["sym"], lambda ev, st, a: brackets.normal_quantize(a, ev._need_spec(st))),
    "star": _fn(["sym", "sym"], lambda ev, st, a, b: brackets.star_normal(a, b, ev._need_spec(st))),
    "poisson": _fn(["sym", "sym"], lambda ev, st, a, b: brackets.poisson(a, b, ev._need_spec(st))),
    "witness": _fn(["sym", "sym"], _witness),
    "diff": _raw(["scalar"], _diff),
    "reduce": _fn(["scalar"], lambda ev, st, a: a.reduce()),
    "gradlogdet": _raw([], _gradlogdet),
}


def run_script(text: str) -> Report:
    """Parse and evaluate; a syntax error becomes a single error entry."""
    from .parser import parse

    try:
        script = parse(text)
    except ParseError as exc:
        report = Report()
        report.entries.append(Entry(1, exc.line, "<parse>", "error", [], str(exc)))
        return report
    return Evaluator().run(script)
