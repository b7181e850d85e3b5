"""Command-line front end: ``qkwhitney <command> --shape r1,...:n [options]``.

Reports are JSON on stdout (``"schema": 1``, sorted keys). ``--text`` prints
a flat projection of the same report. Exit codes: 0 success, 1 failed
assertion, 2 usage error, 3 resource budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .exceptions import (
    CapExceeded,
    DimensionError,
    DomainError,
    InfiniteDimensional,
    ParseError,
    QKError,
    QVariablePresent,
    ResourceError,
    ShapeError,
)
from .groebner import DEFAULT_STEP_BUDGET, min_poly, mult_matrix
from .parser import evaluate, parse_expr
from .quotient import (
    classical_model,
    lift_reduce,
    membership_polynomial,
    structure_constants,
)
from .schubert import (
    divisor_generation_check,
    minimal_reps,
    schubert_in_presentation,
    triangularity_check,
)
from .series import DEFAULT_QORDER
from .whitney import parse_shape, relation_set

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _perm_text(w):
    return "".join(map(str, w))


def _parse_perm(text, n):
    try:
        w = tuple(int(c) for c in text.replace(",", "").replace(" ", ""))
    except ValueError:
        raise UsageError(f"bad permutation {text!r}") from None
    if sorted(w) != list(range(1, n + 1)):
        raise UsageError(f"{text!r} is not a permutation of 1..{n}")
    return w


def _model(args, rs):
    return classical_model(rs.classical, step_budget=args.step_budget)


def _relations(args, D=None):
    return relation_set(args.shape, D or args.qorder, not args.nonequivariant)


def _need_expr(args):
    if not args.expr:
        raise UsageError(f"{args.command} needs --expr")
    return parse_expr(args.expr, args.shape)


# -- commands ----------------------------------------------------------------


def cmd_present(args):
    rs = _relations(args)
    form = args.form
    gens = {"classical": rs.classical, "completed": rs.completed, "poly": rs.polynomial}[form]
    return {
        "form": form,
        "D": rs.D if form == "completed" else None,
        "labels": [[j, l] for j, l in rs.labels],
        "generators": [str(g) for g in gens],
    }


def cmd_nf(args):
    ast = _need_expr(args)
    rs = _relations(args)
    model = _model(args, rs)
    eq = not args.nonequivariant
    if args.completed:
        elem = evaluate(ast, args.shape, eq, D=args.qorder)
        lnf = lift_reduce(elem, model, rs.completed, args.qorder, args.step_budget)
        return {
            "D": args.qorder,
            "basis": model.basis_.render(),
            "normal_form": str(lnf.remainder),
            "coordinates": [str(s) for s in lnf.vector()],
        }
    elem = evaluate(ast, args.shape, eq, with_q=False)
    nf = model.normal_form(elem)
    return {
        "basis": model.basis_.render(),
        "normal_form": str(nf),
        "coordinates": [str(c) for c in model.coordinates(elem)],
    }


def cmd_member(args):
    ast = _need_expr(args)
    eq = not args.nonequivariant
    rs = _relations(args)
    if args.completed:
        model = _model(args, rs)
        elem = evaluate(ast, args.shape, eq, D=args.qorder)
        lnf = lift_reduce(elem, model, rs.completed, args.qorder, args.step_budget)
        return {"ideal": "completed", "D": args.qorder, "member": lnf.is_zero(),
                "normal_form": str(lnf.remainder)}
    if args.form == "poly":
        elem = evaluate(ast, args.shape, eq)
        return {"ideal": "polynomial",
                "member": membership_polynomial(elem, rs.polynomial, args.step_budget)}
    model = _model(args, rs)
    elem = evaluate(ast, args.shape, eq, with_q=False)
    nf = model.normal_form(elem)
    return {"ideal": "classical", "member": not nf, "normal_form": str(nf)}


def cmd_rank(args):
    rs = _relations(args)
    model = _model(args, rs)
    return {
        "rank": model.rank_,
        "coset_count": len(minimal_reps(args.shape)),
        "basis": model.basis_.render(),
    }


def cmd_minpoly(args):
    ast = _need_expr(args)
    rs = _relations(args)
    model = _model(args, rs)
    elem = evaluate(ast, args.shape, not args.nonequivariant, with_q=False)
    mp = min_poly(mult_matrix(elem, model.basis_, model.gb_), model.field)
    return {
        "element": str(elem),
        "rank": model.rank_,
        "degree": len(mp) - 1,
        "coefficients": [str(c) for c in mp],
    }


def cmd_structure(args):
    if args.nonequivariant and args.basis == "schubert":
        raise UsageError("the Schubert basis needs equivariant coefficients")
    rs = _relations(args)
    model = _model(args, rs)
    if args.basis == "schubert":
        reps = minimal_reps(args.shape)
        classes = [schubert_in_presentation(args.shape, w, model) for w in reps]
        names = [_perm_text(w) for w in reps]
    else:
        classes = model.basis_.polys()
        names = model.basis_.render()
    sc = structure_constants(model, rs.completed, classes, args.qorder)
    table = {}
    for (i, j), coeffs in sc.items():
        if i <= j:
            table[f"{names[i]}*{names[j]}"] = {
                names[r]: str(s) for r, s in enumerate(coeffs) if s
            }
    return {"D": args.qorder, "basis": names, "products": table}


def cmd_schubert(args):
    if args.nonequivariant:
        raise UsageError("Schubert classes need equivariant coefficients")
    shape = args.shape
    tri = triangularity_check(shape)
    perms = [_parse_perm(args.perm, shape.n)] if args.perm else minimal_reps(shape)
    reps = set(minimal_reps(shape))
    for w in perms:
        if w not in reps:
            raise UsageError(f"{_perm_text(w)} is not a minimal coset representative")
    model = _model(args, _relations(args))
    return {
        "convention": tri["convention"],
        "triangular": tri["status"] == "pass",
        "classes": {_perm_text(w): str(schubert_in_presentation(shape, w, model)) for w in perms},
    }


def cmd_divgen(args):
    rep = divisor_generation_check(args.shape, args.cap, not args.nonequivariant)
    rep.pop("shape")
    rep.pop("equivariant")
    return rep


def cmd_paper_check(args):
    names = args.only or list(checks.CHECKS)
    unknown = [n for n in names if n not in checks.CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {sorted(checks.CHECKS)}")
    results = checks.run_checks(names)
    return {
        "checks": results,
        "passed": sum(r["status"] == "pass" for r in results),
        "failed": [r["check"] for r in results if r["status"] != "pass"],
        "witnesses": {r["check"]: r.get("witness", r) for r in results if r["status"] != "pass"},
    }


COMMANDS = {
    "present": cmd_present,
    "nf": cmd_nf,
    "member": cmd_member,
    "rank": cmd_rank,
    "minpoly": cmd_minpoly,
    "structure": cmd_structure,
    "schubert": cmd_schubert,
    "divgen": cmd_divgen,
    "paper-check": cmd_paper_check,
}

NEEDS_SHAPE = set(COMMANDS) - {"paper-check"}


def build_parser():
    p = argparse.ArgumentParser(prog="qkwhitney", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, shape=True):
        if shape:
            sp.add_argument("--shape", required=True, help="flag type r1,r2,...:n")
        sp.add_argument("--qorder", type=int, default=DEFAULT_QORDER,
                        help="truncation order D in total q-degree (default %(default)s)")
        sp.add_argument("--nonequivariant", action="store_true", help="set every T_i = 1")
        sp.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
        sp.add_argument("--out", help="also write the JSON report to this file")
        sp.add_argument("--text", action="store_true", help="flat text instead of JSON")
        return sp

    sp = common(sub.add_parser("present", help="print the ideal generators"))
    sp.add_argument("--form", choices=["classical", "completed", "poly"], default="classical")
    for name, helptext in (("nf", "normal form"), ("member", "ideal membership")):
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("--expr", required=True)
        sp.add_argument("--completed", action="store_true", help="work in the completed quantum ring")
        if name == "member":
            sp.add_argument("--form", choices=["classical", "poly"], default="classical")
    common(sub.add_parser("rank", help="rank and standard monomial basis"))
    sp = common(sub.add_parser("minpoly", help="minimal polynomial of multiplication"))
    sp.add_argument("--expr", required=True)
    sp = common(sub.add_parser("structure", help="quantum structure constants"))
    sp.add_argument("--basis", choices=["schubert", "monomial"], default="schubert")
    sp = common(sub.add_parser("schubert", help="Schubert classes in the presentation"))
    sp.add_argument("--perm", help="one-line notation, e.g. 213")
    sp = common(sub.add_parser("divgen", help="span of monomials in the Schubert divisors"))
    sp.add_argument("--cap", type=int, default=4)
    sp = common(sub.add_parser("paper-check", help="run the golden checks"), shape=False)
    sp.add_argument("--only", nargs="*", help="subset of checks")
    return p


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {json.dumps(obj)}"


def render_report(report, text=False):
    if text:
        return "\n".join(_flatten(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run_command(argv):
    """Run one command; returns (exit code, report dict or None)."""
    code, report, _ = _execute(argv)
    return code, report


def _execute(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_USAGE if exc.code else EXIT_OK), None, None
    report = {"schema": SCHEMA, "command": args.command}
    try:
        if args.command in NEEDS_SHAPE:
            args.shape = parse_shape(args.shape)
            report["shape"] = args.shape.label()
        if args.qorder < 1:
            raise UsageError("--qorder must be at least 1")
        report.update(COMMANDS[args.command](args))
    except UsageError as exc:
        return EXIT_USAGE, {**report, "error": str(exc), "error_type": "usage"}, args
    except (ParseError, ShapeError, DomainError, DimensionError, QVariablePresent) as exc:
        return EXIT_USAGE, {**report, "error": str(exc), "error_type": type(exc).__name__}, args
    except (ResourceError, CapExceeded, InfiniteDimensional) as exc:
        return EXIT_BUDGET, {**report, "error": str(exc), "error_type": type(exc).__name__}, args
    except QKError as exc:
        report.update(error=str(exc), error_type=type(exc).__name__,
                      witness=str(getattr(exc, "witness", None)))
        return EXIT_FAIL, report, args
    code = EXIT_OK
    if args.command == "paper-check" and report["failed"]:
        code = EXIT_FAIL
    return code, report, args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, report, args = _execute(argv)
    if report is None:
        return code
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    payload = render_report(report)
    sys.stdout.write(render_report(report, True) if args.text else payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
