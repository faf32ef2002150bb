"""Command-line front end: ``crepant <subcommand> [options] [--json PATH]``.

Exit status is 0 when every requested check passes, 1 when a check fails
(the witness and the error class are printed), and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .coeff import RatFunc
from .errors import CrepantError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=_default) + "\n"


def _write_json(path, data):
    if path:
        with open(path, "w") as fh:
            fh.write(dump_json(data))


def _failure(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("degree", "lhs", "rhs", "row", "cls", "age", "rank_defect"):
        if hasattr(exc, attr):
            out[attr] = str(getattr(exc, attr))
    return out


# ---------------------------------------------------------------------------
# groups


def builtin_group(name: str):
    """``Z<m>`` in SU(2), ``D<m>`` and ``S3`` in SO(3), ``Z2xZ2``/``K4``, ``A4``."""
    from . import characters as ch

    key = name.strip().upper()
    if key in ("Z2XZ2", "K4", "V4"):
        return ch.klein_so3()
    if key == "A4":
        return ch.a4_so3()
    if key == "S3":
        return ch.dihedral_so3(3)
    m = re.fullmatch(r"([ZD])(\d+)", key)
    if m:
        k = int(m.group(2))
        if k < 2:
            raise UsageError(f"group order parameter must be >= 2: {name}")
        return ch.cyclic_su2(k) if m.group(1) == "Z" else ch.dihedral_so3(k)
    raise UsageError(f"unknown group {name!r}; try Z2, Z3, Z4, Z2xZ2, S3, D4, A4")


# ---------------------------------------------------------------------------
# subcommands


def cmd_a1_verify(args):
    from .a1 import default_transform, verify_corollary
    from .series import TransformSpec

    if args.order < 5:
        raise UsageError("--order must be >= 5")
    if args.transform:
        with open(args.transform) as fh:
            spec = TransformSpec.from_json(json.load(fh))
    else:
        spec = default_transform(args.branch)
    report = verify_corollary(args.order, spec, q_order=args.q_order, raise_on_failure=False)
    report["lhs_coeffs"] = {str(k): v for k, v in report["lhs_coeffs"].items()}
    report["rhs_coeffs"] = {str(k): v for k, v in report["rhs_coeffs"].items()}
    report["continuations"] = {str(k): v for k, v in report["continuations"].items()}
    degs = report["matched_degrees"]
    print(f"A1 comparison at order {args.order}, q-order {report['q_order']}, q -> {report['q_value']}")
    print(f"  x0-block monomials matched: {len(report['x0_block_matched'])}")
    if degs:
        print(f"  third x1-derivative matched for x1-degrees {degs[0]}..{degs[-1]}")
    if report["failure"]:
        f = report["failure"]
        print(f"FAIL {f['error']}: {f['message']}")
    else:
        print("PASS")
    return report, report["passed"]


def _matrix_summary(M):
    for c, mu in enumerate(M.basis):
        for r, nu in enumerate(M.basis):
            e = M.entries[r][c]
            if e:
                print(f"  c[{nu}][{mu}] = {e}")


def cmd_sym_matrix(args):
    from .symhilb import quantum_mult_matrix, resum_matrix

    if args.n < 2:
        raise UsageError("--n must be >= 2")
    M = quantum_mult_matrix(args.n, args.order)
    if args.resum:
        M = resum_matrix(M)
    print(f"Sym^{args.n} transposition matrix ({M.kind}), order {args.order}")
    _matrix_summary(M)
    return M.to_json(), True


def cmd_sym_report(args):
    from .symhilb import crc_report

    if args.n < 2:
        raise UsageError("--n must be >= 2")
    report = crc_report(args.n, args.order, seed=args.seed, draws=args.draws)
    print(f"Sym^{args.n} at u-order {args.order}, seed {args.seed}")
    for name, check in report["checks"].items():
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[check.get("passed")]
        line = f"  {status} {name}"
        if check.get("passed") is False:
            line += f"  witness={json.dumps(check.get('witness') or check.get('error'), sort_keys=True)}"
        print(line)
    return report, report["passed"]


def cmd_pade(args):
    from .series import evaluate_continuation, pade, pade_auto

    try:
        coeffs = [RatFunc.coerce(c.strip()) for c in args.coeffs.split(",") if c.strip()]
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"cannot parse --coeffs: {exc}") from exc
    if (args.num is None) != (args.den is None):
        raise UsageError("--num and --den go together")
    if args.num is None:
        f = pade_auto(coeffs, var=args.var)
    else:
        f = pade(coeffs, args.num, args.den, var=args.var)
    print(f)
    report = {"coeffs": [str(c) for c in coeffs], "degrees": list(f.degrees), "result": str(f), "rational": f.to_json()}
    if args.at is not None:
        value = evaluate_continuation(f, RatFunc.coerce(args.at))
        print(f"value at {args.var} = {args.at}: {value}")
        report["value"] = str(value)
    return report, True


def cmd_chartable(args):
    from .characters import FiniteGroup, character_table, load_group

    if args.group_file:
        G = load_group(args.group_file, args.format)
    elif args.group:
        G = builtin_group(args.group)[0]
    else:
        raise UsageError("give --group or --group-file")
    T = character_table(G, dps=args.dps, seed=args.seed)
    err = T.orthogonality_error()
    exact = T.exact_orthogonality()
    print(f"group of order {G.order}, {T.size} classes, sizes {[c.size for c in T.classes]}")
    for d, row in zip(T.dims, T.numeric()):
        print(f"  dim {d}: " + "  ".join(f"{v.real:+.4f}{v.imag:+.4f}i" for v in row))
    print(f"orthogonality error {err:.3e}; exact certificate: {'yes' if exact else 'no'}")
    passed = err < args.tol
    report = dict(T.to_json(), orthogonality_error=f"{err:.3e}", exact_orthogonality=exact, passed=passed)
    print("PASS" if passed else "FAIL orthogonality")
    return report, passed


def cmd_crc_transform(args):
    from .a1 import verify_corollary
    from .characters import age_check, character_table, crc_change_of_variables, grading_check

    G, V = builtin_group(args.group)
    T = character_table(G, dps=args.dps)
    ages = age_check(G, V)
    X = crc_change_of_variables(G, V, T, branch=args.branch, dps=args.dps)
    grading = grading_check(X, ages["ages"])
    report = {
        "group": args.group,
        "ages": [str(a) for a in ages["ages"]],
        "hard_lefschetz": ages["hard_lefschetz"],
        "transform": X.to_json(),
        "grading": grading,
    }
    print(f"{args.group}: order {G.order}, ages {report['ages']}")
    if X.L_exact is not None:
        for R, row in enumerate(X.L_exact):
            terms = [f"({x})*x{k}" for k, x in enumerate(row) if x]
            print(f"  y{R} = " + " + ".join(terms))
    else:
        for R, row in enumerate(X.L):
            print(f"  y{R} = " + " + ".join(f"({complex(v):.6g})*x{k}" for k, v in enumerate(row) if abs(v) > 1e-30))
    for R, f in enumerate(X.q_values):
        if f is not None:
            print(f"  q{R} = exp(2 pi i * {f})")
    passed = grading["passed"]
    if args.verify_order:
        spec = X.to_transform_spec()
        result = verify_corollary(args.verify_order, spec, raise_on_failure=False)
        report["verification"] = {
            "order": args.verify_order,
            "passed": result["passed"],
            "matched_degrees": result["matched_degrees"],
            "failure": result["failure"],
        }
        print(f"  composed A1 comparison at order {args.verify_order}: {'PASS' if result['passed'] else 'FAIL'}")
        passed = passed and result["passed"]
    return report, passed


def cmd_extend_potential(args):
    from .a1 import default_transform, potential_X
    from .series import TransformSpec, TruncatedSeries, extended_potential

    if args.input:
        with open(args.input) as fh:
            F = TruncatedSeries.from_json(json.load(fh))
    else:
        if args.order < 3:
            raise UsageError("--order must be >= 3")
        F = potential_X(args.order)
    if args.transform:
        with open(args.transform) as fh:
            spec = TransformSpec.from_json(json.load(fh))
    else:
        spec = default_transform(args.branch)
    E = extended_potential(F, spec)
    print(f"extended potential in {', '.join(E.ring.var_names)}: {len(E.terms)} terms")
    return E.to_json(), True


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crepant", description="Crepant resolution comparisons with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here")
        sp.set_defaults(func=fn)
        return sp

    sp = add("a1-verify", cmd_a1_verify, "compare the A1 potentials after q -> -1")
    sp.add_argument("--order", type=int, default=20)
    sp.add_argument("--q-order", type=int, default=None)
    sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
    sp.add_argument("--transform", metavar="PATH", help="TransformSpec JSON")

    sp = add("sym-matrix", cmd_sym_matrix, "print the Sym^n transposition matrix")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--order", type=int, default=12)
    sp.add_argument("--resum", action="store_true", help="resum entries to rational functions of q")

    sp = add("sym-report", cmd_sym_report, "run the Sym^n property suite")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--order", type=int, default=12)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--draws", type=int, default=3)

    sp = add("pade", cmd_pade, "rational reconstruction of a power series")
    sp.add_argument("--coeffs", required=True, help="comma-separated coefficients, lowest degree first")
    sp.add_argument("--num", type=int, default=None, help="numerator degree")
    sp.add_argument("--den", type=int, default=None, help="denominator degree")
    sp.add_argument("--var", default="q")
    sp.add_argument("--at", default=None, help="evaluate the continuation at this point")

    sp = add("chartable", cmd_chartable, "character table of a finite group")
    sp.add_argument("--group", help="builtin group name")
    sp.add_argument("--group-file", metavar="PATH")
    sp.add_argument("--format", choices=("cayley", "perm", "grid"), default=None)
    sp.add_argument("--dps", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)

    sp = add("crc-transform", cmd_crc_transform, "change of variables for a polyhedral group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
    sp.add_argument("--dps", type=int, default=64)
    sp.add_argument("--verify-order", type=int, default=None, help="compose with the A1 comparison")

    sp = add("extend-potential", cmd_extend_potential, "shift twisted variables x_i -> x_i + u_i")
    sp.add_argument("--input", metavar="PATH", help="TruncatedSeries JSON (default: A1 orbifold potential)")
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--transform", metavar="PATH")
    sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, passed = args.func(args)
    except (UsageError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CrepantError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}")
        _write_json(args.json, {"passed": False, "failure": _failure(exc)})
        return EXIT_FAIL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_json(args.json, report)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
