"""Command-line front end.  JSON for single results, TSV for scans.

Exit codes: 1 usage, 2 validation, 3 routes disagree, 4 budget exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

from . import cartier, charsum, criteria, cyclo, ff, zeta
from .config import Budget
from .curves import CurveSpec, SuperellipticBase
from .errors import (BudgetExceeded, DegreeTooLarge, JacrankError, ValidationError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class Disagreement(Exception):
    pass


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _dump(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _budget(args):
    threads = args.threads
    if threads is None:
        try:
            threads = max(1, int(os.environ.get("JACRANK_THREADS", "1")))
        except ValueError:
            threads = 1
    return Budget(max_terms=args.max_terms, threads=threads)


# ---------------------------------------------------------------------------
# curve files

def _field_elem(F, value, where):
    if isinstance(value, bool) or value is None:
        raise ValidationError(f"{where}: expected a field element, got {value!r}")
    if isinstance(value, int):
        return F.elem(value)
    if isinstance(value, list) and all(isinstance(c, int) for c in value) and len(value) <= F.h:
        return F.elem(value)
    raise ValidationError(f"{where}: expected an integer or at most {F.h} coefficients")


def _require(obj, key, kind):
    if key not in obj:
        raise ValidationError(f"missing field {key!r}")
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ValidationError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise ValidationError(f"field {key!r} must be a list")
    return val


def load_field(obj):
    p = _require(obj, "p", int)
    h = obj.get("h", 1)
    if not isinstance(h, int) or h < 1:
        raise ValidationError("field 'h' must be a positive integer")
    try:
        F = ff.make_field(p, h)
    except JacrankError as exc:
        raise ValidationError(f"field 'p'/'h': {exc}")
    if "modulus" in obj and list(obj["modulus"]) != list(F.modulus):
        raise ValidationError(f"field 'modulus': expected the canonical {list(F.modulus)}")
    return F


def curve_from_json(obj, allow_holes=False):
    """Build a CurveSpec; with allow_holes, null branch entries are returned as None."""
    if not isinstance(obj, dict):
        raise ValidationError("curve file must hold a JSON object")
    F = load_field(obj)
    m = _require(obj, "m", int)
    exps = _require(obj, "exponents", list)
    branch = _require(obj, "branch", list)
    for i, a in enumerate(exps):
        if not isinstance(a, int):
            raise ValidationError(f"exponents[{i}]: expected an integer")
    pts = []
    for i, x in enumerate(branch):
        if x is None and allow_holes:
            pts.append(None)
        else:
            pts.append(_field_elem(F, x, f"branch[{i}]"))
    lead = _field_elem(F, obj["lead"], "lead") if "lead" in obj else None
    base = obj.get("base", "P1")
    if base == "P1":
        sb = None
    elif isinstance(base, dict):
        m0 = _require(base, "m0", int)
        f0 = _require(base, "f0", list)
        sb = SuperellipticBase(m0, tuple(_field_elem(F, c, f"base.f0[{i}]") for i, c in enumerate(f0)))
    else:
        raise ValidationError("field 'base' must be \"P1\" or {\"m0\": .., \"f0\": [..]}")
    if allow_holes and None in pts:
        return F, m, exps, pts, lead, sb
    try:
        return CurveSpec(F, m, tuple(exps), tuple(pts), base=sb, lead=lead)
    except (JacrankError, ValueError, TypeError) as exc:
        raise ValidationError(str(exc))


def _load_curve(path, allow_holes=False):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: line {exc.lineno}: {exc.msg}")
    try:
        return curve_from_json(obj, allow_holes)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}")


# ---------------------------------------------------------------------------
# subcommands

def _order(p, m):
    return cyclo._order(p, m)


def cmd_jacobi(args, budget):
    h = args.h or _order(args.p, args.m)
    F = ff.make_field(args.p, h)
    J = charsum.jacobi_sum(F, args.m, args.a, method=args.method, budget=budget)
    out = {"field": F.describe(), "m": args.m, "a": args.a, "J": J.to_json(),
           "abs_square": cyclo.abs_square(J)}
    if not J.is_zero():
        fact = cyclo.factor_p(args.m, args.p)
        out["valuations"] = cyclo.valuations(J, args.p)
        out["primes"] = [list(g) for g in fact.residues]
    _dump(out)


def cmd_stickelberger(args, budget):
    E = criteria.exponent_data(args.m, args.a, args.p)
    out = E.to_json()
    out["predicted_valuations"] = criteria.stickelberger_valuations(E)
    out["field"] = ff.make_field(args.p, E.h).describe()
    _dump(out)


def cmd_criteria(args, budget):
    E = criteria.exponent_data(args.m, args.a, args.p)
    _dump({"field": ff.make_field(args.p, E.h).describe(), "exponents": E.to_json(),
           "not_supersingular": criteria.not_supersingular_test(E),
           "not_prank0_if_base_P1": criteria.not_prank0_test(E)})


def cmd_lpoly(args, budget):
    C = _load_curve(args.curve)
    C.require_mu_m()
    L = charsum.l_polynomial(C, args.j, budget=budget)
    out = {"field": C.field.describe(), "curve": C.to_json(), "lpoly": L.to_json()}
    if C.base is not None or C.normalized().infinity_branch:
        try:
            k, S, J = charsum.verify_constant_term(C, args.j, budget=budget)
            out["constant_term"] = {"ok": True, "unit_exponent": k, "J": J.to_json()}
        except JacrankError as exc:
            out["constant_term"] = {"ok": False, "error": str(exc)}
    _dump(out)


def _cartier_verdict(C):
    if C.m != 2 or C.base is not None or C.p == 2:
        return criteria.PrankVerdict("cartier", None, None, {"skipped": "needs y^2 = f(x) in odd characteristic"})
    A = cartier.cartier_matrix(cartier.hyperelliptic_poly(C), C.p, C.field)
    detail = {"matrix": A.to_json()}
    if A.g == 2:
        detail["genus2_prank0"] = cartier.genus2_prank0_test(A)
    return criteria.PrankVerdict("cartier", cartier.semilinear_prank(A), None, detail)


def prank_routes(C, route, budget):
    routes = ["criterion", "oracle", "cartier"] if route == "all" else [route]
    out = []
    for r in routes:
        if r == "criterion":
            out.append(criteria.criterion_verdict(C, budget))
        elif r == "oracle":
            out.append(criteria.oracle_verdict(C, budget))
        else:
            out.append(_cartier_verdict(C))
    values = {v.prank for v in out if v.prank is not None}
    return out, len(values) <= 1


def cmd_prank(args, budget):
    C = _load_curve(args.curve)
    verdicts, agree = prank_routes(C, args.route, budget)
    _dump({"field": C.field.describe(), "curve": C.to_json(), "agree": agree,
           "verdicts": [v.to_json() for v in verdicts]})
    if not agree:
        raise Disagreement("routes disagree")


def cmd_zeta(args, budget):
    C = _load_curve(args.curve)
    Z = zeta.zeta_numerator(C, full=args.full, budget=Budget(max_terms=budget.max_terms,
                                                             max_field=args.max_field,
                                                             threads=budget.threads))
    out = Z.to_json()
    out["field"] = C.field.describe()
    _dump(out)


def cmd_cartier(args, budget):
    F = ff.make_field(args.p, args.h)
    coeffs = args.f if args.h == 1 else [F.from_code(c) for c in args.f]
    A = cartier.cartier_matrix(coeffs, args.p, F)
    out = {"field": F.describe(), "genus": A.g, "matrix": A.to_json(),
           "semilinear_prank": cartier.semilinear_prank(A)}
    if A.g == 2:
        out["genus2_prank0"] = cartier.genus2_prank0_test(A)
    _dump(out)


def cmd_deuring(args, budget):
    _dump(criteria.deuring(args.p).to_json())


def cmd_search(args, budget):
    F, m, exps, pts, lead, sb = _load_curve(args.curve_template, allow_holes=True)
    if args.scan != "branch":
        raise ValidationError("only --scan branch is supported")
    holes = [i for i, x in enumerate(pts) if x is None]
    fixed = {x for x in pts if x is not None}
    free = [x for x in F.elements() if x not in fixed]
    out = sys.stdout
    out.write("\t".join([f"x{i}" for i in holes] + ["verdict", "witnesses"]) + "\n")
    disagree = False
    for combo in itertools.permutations(free, len(holes)):
        cur = list(pts)
        for i, x in zip(holes, combo):
            cur[i] = x
        try:
            C = CurveSpec(F, m, tuple(exps), tuple(cur), base=sb, lead=lead)
        except JacrankError:
            continue
        verdicts, agree = prank_routes(C, args.route, budget)
        disagree |= not agree
        zero = [v.route for v in verdicts if v.prank == 0]
        if zero:
            verdict = "prank0" if agree else "disagree"
            out.write("\t".join([json.dumps(F.to_json(x)) for x in combo] + [verdict, ",".join(zero)]) + "\n")
    if disagree:
        raise Disagreement("routes disagree on at least one curve")


def build_parser():
    ap = _Parser(prog="jacrank", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--max-terms", type=int, default=10**9)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("jacobi", add_help=False)
    s.add_argument("--help", action="help")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-h", dest="h", type=int, default=None, help="field degree (default: order of p mod m)")
    s.add_argument("-a", type=_ints, required=True)
    s.add_argument("--method", choices=["auto", "recursive", "direct"], default="auto")
    s.set_defaults(func=cmd_jacobi)

    for name, fn in (("stickelberger", cmd_stickelberger), ("criteria", cmd_criteria)):
        s = sub.add_parser(name)
        s.add_argument("-m", type=int, required=True)
        s.add_argument("-p", type=int, required=True)
        s.add_argument("-a", type=_ints, required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("lpoly")
    s.add_argument("--curve", required=True)
    s.add_argument("-j", type=int, default=1)
    s.set_defaults(func=cmd_lpoly)

    s = sub.add_parser("prank")
    s.add_argument("--curve", required=True)
    s.add_argument("--route", choices=["criterion", "oracle", "cartier", "all"], default="all")
    s.set_defaults(func=cmd_prank)

    s = sub.add_parser("zeta")
    s.add_argument("--curve", required=True)
    s.add_argument("--full", action="store_true")
    s.add_argument("--max-field", type=int, default=1 << 24)
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("cartier")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-H", dest="h", type=int, default=1)
    s.add_argument("-f", type=_ints, required=True, help="coefficients, constant term first")
    s.set_defaults(func=cmd_cartier)

    s = sub.add_parser("deuring")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(func=cmd_deuring)

    s = sub.add_parser("search")
    s.add_argument("--curve-template", required=True)
    s.add_argument("--scan", default="branch")
    s.add_argument("--route", choices=["criterion", "oracle", "all"], default="all")
    s.set_defaults(func=cmd_search)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        ap.error("--threads must be positive")
    try:
        args.func(args, _budget(args))
    except Disagreement as exc:
        print(f"jacrank: {exc}", file=sys.stderr)
        return 3
    except (BudgetExceeded, DegreeTooLarge) as exc:
        print(f"jacrank: budget exceeded: {exc}", file=sys.stderr)
        return 4
    except (JacrankError, ValueError, TypeError, ArithmeticError) as exc:
        print(f"jacrank: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
