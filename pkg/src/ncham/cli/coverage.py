"""Audit table: every library operation and a script that reaches it.

``audit()`` runs each snippet and reports the ones that error, so the table
cannot silently go stale.
"""

from __future__ import annotations

from .evaluator import run_script

_W1 = "algebra weyl n=1;\n"
_W2 = "algebra weyl n=2;\n"
_FREE = "algebra free x1, x2;\n"
_POLAR = "context polar;\nmap x = r*c, y = r*s;\n"
_LIN = "context coords q1, q2;\nmap Q1 = q1 + q2, Q2 = q2 + q1^2;\n"

COVERAGE: dict[str, tuple[str, str]] = {
    # scalars
    "scalars.scalar_arith": ("arithmetic in scalar arguments", _POLAR + "print gradlogdet(r) * (r + 1) / (r - 1);"),
    "scalars.scalar_diff": ("diff(scalar, coordinate)", "context polar;\nprint diff(r*c^2, theta);"),
    "scalars.reduce_relations": ("reduce(scalar)", "context polar;\nprint reduce(s^3 + c^2*s);"),
    # ncalg
    "ncalg.normalize": ("normalize(H)", _W1 + "print normalize(p*q);"),
    "ncalg.nc_mul": ("'*' on algebra elements", _W1 + "print (q + p)*(q - p);"),
    "ncalg.commutator": ("[A, B] or comm(A, B)", _W1 + "print [p^2, q^2];\nprint comm(p, q);"),
    # calculus
    "calculus.partial": ("partial(H, u)", _FREE + "print partial(x1*x2*x1, x1);"),
    "calculus.op_partial": ("opartial(H, u, X)", _FREE + "print opartial(x1*x2*x1, x1, x2);"),
    "calculus.partial_multi": ("partialm(H, s1, .., sm)", _W1 + "print partialm(q^2*p^3, 1, 2);"),
    "calculus.differential": ("d(H)", _FREE + "print d(x1*x2);"),
    "calculus.pair": ("pair(d(H), X(u1), .., X(um))", _FREE + "print pair(d(x1*x2), x2, x1);"),
    "calculus.apply_derivation": ("apply(H, X(u1), .., X(um)) and euler(H)", _FREE + "print apply(x1*x2, x2, 0);\nprint euler(x1*x2*x1);"),
    "calculus.ad": ("ad(F, H) and adpartial(u, H)", _W1 + "print ad(p, q^2);\nalgebra weyl n=1 constant;\nprint adpartial(p, q^2);"),
    "calculus.chain_rule_check": (
        "check zero chaindefect(H, alpha, X, u1(phi), ..)",
        _FREE + "check zero chaindefect(x1*x2, x1, x2, x1*x2, x2 + x1);",
    ),
    "calculus.cyclic_variational": ("cyclic(F, u)", _FREE + "print cyclic(x1*x1*x2, x1);"),
    # brackets
    "brackets.poisson": ("{a, b} or poisson(a, b)", _W1 + "print {p^2, q^2};"),
    "brackets.theta_table": ("theta c=[[..]] s=INT", "theta c=[[0, 1], [-1, 0]] s=2;"),
    "brackets.bracket_expansion_theta": (
        "expand_theta(H, F)",
        "algebra commutator u1, u2 c=[[0, 1], [-1, 0]];\nprint expand_theta(u1^2, u2^2);",
    ),
    "brackets.bracket_expansion_pair": ("expand_pair(H, F)", _W1 + "print expand_pair(p^3, q^3);"),
    "brackets.smbl": ("smbl(H)", _W1 + "print smbl(p*q);"),
    "brackets.normal_quantize": ("quantize(a)", _W1 + "print quantize(p*q);"),
    "brackets.star_normal": ("star(a, b)", _W1 + "print star(p^2, q^2);"),
    "brackets.symmetric_form": ("symform(H, F)", _W1 + "print symform(p, q);"),
    "brackets.dagger": ("dag(H)", _W1 + "print dag(q*p);"),
    "brackets.res": ("res(H)", _W1 + "print res(p*q);"),
    "brackets.res_form": ("resform(H, F)", _W1 + "print resform(q, q);"),
    "brackets.divergence_witness": ("witness(a, b)", _W2 + "print witness(q1^2 + q2, q2);"),
    # canon
    "canon.jacobian": ("map ..; jacobian", _POLAR + "jacobian;"),
    "canon.classical_lift": ("lift classical; check lift classical", _POLAR + "lift classical;\ncheck lift classical;"),
    "canon.lift_right": ("lift right; check lift right", _POLAR + "lift right;\ncheck lift right;"),
    "canon.lift_left": ("lift left; check lift left", _POLAR + "lift left;\ncheck lift left;"),
    "canon.gauge_lift": ("gauge f; check gauge f", _LIN + "gauge q1*q2;\ngauge classical q1;\ncheck gauge q1*q2;"),
    "canon.psi_defect": ("psi", _POLAR + "psi;"),
    "canon.grad_log_det": ("gradlogdet; gradlogdet(coordinate)", _POLAR + "gradlogdet;\nprint gradlogdet(r);"),
    "canon.check_canonical_quantum": ("check canonical P=(..) Q=(..)", _W1 + "check canonical P=(p + q) Q=(q);"),
    "canon.check_canonical_classical": ("check classical P=(..) Q=(..)", _W1 + "check classical P=(p + q^2) Q=(q);"),
    "canon.mechanical_lr": ("mechanical [a=[[..]]] [V=expr]", _LIN + "mechanical a=[[1, 0], [0, 2]] V=Q1^2;"),
    "canon.naive_transformed_hamiltonian": ("naive left|right", _POLAR + "naive left;\nnaive right;"),
    "canon.lr_difference": ("lrdiff [a=[[..]]]", _LIN + "lrdiff;"),
    "canon.attempt_inverse": (
        "inverse bound=INT [P=(..) Q=(..)]",
        _LIN + "inverse bound=4;\ncontext coords q;\nalgebra weyl;\ninverse bound=2 P=(p) Q=(q + p^2);",
    ),
    "canon.nc_jacobian": ("ncjacobian (F1, .., Fn)", _FREE + "ncjacobian (x1*x2, x2*x1*x1);"),
    # cli
    "cli.parse": ("every script", _W1 + "let H = p^2;"),
    "cli.evaluate": ("every script", _W1 + "print H;"),
    "cli.emit": ("ncham run --format text|json", _W1),
}


def audit() -> dict[str, str]:
    """Map each operation whose snippet fails to the first error message.

    ``cli.evaluate`` deliberately references an unbound name; its snippet must
    produce exactly one error, so it is audited separately.
    """
    failures = {}
    for op, (_, snippet) in COVERAGE.items():
        report = run_script(snippet)
        errors = [e for e in report.entries if e.status in ("error", "fail")]
        if op == "cli.evaluate":
            if len(errors) != 1:
                failures[op] = "expected one isolated error"
            continue
        if errors:
            failures[op] = f"{errors[0].statement}: {errors[0].message}"
    return failures
