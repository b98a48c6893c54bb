"""Command-line front end.

Exit codes: 0 the property holds or the command succeeded, 1 the property
fails (a certificate is printed), 2 usage or format error, 3 inconclusive
because a budget ran out.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
from pathlib import Path

from . import config
from .algebra import same_signature
from .algebraize import (
    ConsequenceQuery,
    check_transformers,
    derive_maltsev_scheme,
    entails,
    maltsev_scheme_check,
    search_transformers,
)
from .catalog import BUILTIN, default_catalog
from .cong_equations import check_equation, find_failure, lift_failure_check, parse_cong_equation
from .congruence import con
from .errors import AlgebraError, Inconclusive, LiftError, NotDerivable
from .io import (
    certificate_from_dict,
    certificate_to_dict,
    format_rho,
    format_tau,
    load_algebra,
    parse_rho,
    parse_tau,
    save_algebra,
    scheme_from_dict,
    scheme_to_dict,
)
from .matrix_power import matrix_power, verify_lambda_embedding
from .terms import max_var, parse_term

OK, FAILS, USAGE, INCONCLUSIVE = 0, 1, 2, 3


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise AlgebraError(f"cannot read {path}: {exc.strerror}") from None


def _json_file(path) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}: not valid JSON ({exc})") from None


def _lattice_listing(lattice) -> dict:
    return {
        "count": len(lattice),
        "congruences": [[list(b) for b in p.blocks()] for p in lattice],
        "covers": [list(c) for c in lattice.covers()],
    }


# -- subcommands -------------------------------------------------------------

def cmd_con(args) -> tuple[int, dict]:
    A = load_algebra(args.algebra)
    lattice = con(A, bound=args.con_bound)
    return OK, {"verdict": "computed", "algebra": A.name, "size": A.size, "lattice": _lattice_listing(lattice)}


def cmd_mpow(args):
    A = load_algebra(args.algebra)
    M = matrix_power(A, args.n)
    save_algebra(M.result, args.output)
    return OK, {
        "verdict": "written",
        "output": str(args.output),
        "size": M.size,
        "signature": [list(s) for s in M.result.signature.symbols],
    }


def cmd_check_transformers(args):
    A = load_algebra(args.algebra)
    tau = parse_tau(_read(args.tau), A.signature)
    rho = parse_rho(_read(args.rho), A.signature)
    v = check_transformers(A, tau, rho)
    report = {"verdict": "holds" if v else "fails", "algebra": A.name}
    if not v:
        report["counterexample"] = list(v.witness)
    return (OK if v else FAILS), report


def cmd_search_transformers(args):
    A = load_algebra(args.algebra)
    found = search_transformers(A, args.depth, args.max_i, args.max_j, budget=args.budget)
    bounds = {"depth": args.depth, "max_i": args.max_i, "max_j": args.max_j, "budget": args.budget}
    if found is None:
        return FAILS, {
            "verdict": "none",
            "algebra": A.name,
            "note": "bounded-depth, single-algebra evidence",
            "search": bounds,
        }
    tau, rho = found
    return OK, {
        "verdict": "found",
        "algebra": A.name,
        "tau": format_tau(tau).splitlines(),
        "rho": format_rho(rho).splitlines(),
        "search": bounds,
    }


def cmd_entail(args):
    algebras = [load_algebra(p) for p in args.k]
    sig = same_signature(algebras)
    tau = parse_tau(_read(args.tau), sig)
    gamma = [parse_term(t, sig) for t in args.gamma]
    phi = parse_term(args.phi, sig)
    var_count = args.vars
    if var_count is None:
        var_count = 1 + max(max_var(t) for t in [*gamma, phi])
    v = entails(ConsequenceQuery(tuple(algebras), tau, tuple(gamma), phi, var_count))
    report = {
        "verdict": "holds" if v else "fails",
        "gamma": [str(t) for t in gamma],
        "phi": str(phi),
        "var_count": var_count,
    }
    if not v:
        cm = v.witness
        report["countermodel"] = {
            "algebra": algebras[cm.algebra_index].name,
            "algebra_index": cm.algebra_index,
            "assignment": {f"x{i}": a for i, a in enumerate(cm.assignment)},
        }
    return (OK if v else FAILS), report


def _write_json(path, doc):
    if path:
        Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def cmd_ceq_check(args):
    A = load_algebra(args.algebra)
    eq = parse_cong_equation(args.equation)
    v = check_equation(A, eq, budget=args.budget)
    report = {"verdict": "satisfied" if v else "fails", "algebra": A.name, "equation": str(eq)}
    if not v:
        report["certificate"] = certificate_to_dict(v.witness)
        _write_json(args.output, report["certificate"])
    return (OK if v else FAILS), report


def cmd_ceq_find(args):
    eq = parse_cong_equation(args.equation)
    if args.catalog:
        files = sorted(Path(args.catalog).glob("*.json"))
        if not files:
            raise AlgebraError(f"no algebra documents in {args.catalog}")
        catalog = [load_algebra(f) for f in files]
    else:
        catalog = default_catalog()
    cert = find_failure(catalog, eq)
    report = {"equation": str(eq), "catalog": [A.name for A in catalog]}
    if cert is None:
        report["verdict"] = "held on catalog"
        return OK, report
    report["verdict"] = "fails"
    report["algebra"] = cert.algebra.name
    report["certificate"] = certificate_to_dict(cert)
    _write_json(args.output, report["certificate"])
    return FAILS, report


def cmd_ceq_lift(args):
    cert = certificate_from_dict(_json_file(args.certificate))
    try:
        lift = lift_failure_check(cert)
    except LiftError as exc:
        return FAILS, {"verdict": "lift failed (implementation bug)", "error": str(exc)}
    tv = lift.transformers
    report = {
        "verdict": "lifted" if lift.ok else "lift incomplete",
        "equation": str(cert.equation),
        "original_size": cert.algebra.size,
        "lifted_size": lift.lifted.algebra.size,
        "lifted_certificate": certificate_to_dict(lift.lifted),
        "transformer_check": {
            "tau": ["x0 | (box x0)"],
            "rho": ["(arrow x0 x1)", "(backarrow x0 x1)"],
            "verdict": "holds" if tv else "fails",
            "counterexample": None if tv else list(tv.witness),
        },
        "separation_formula": lift.separation_formula,
    }
    return (OK if lift.ok else FAILS), report


def cmd_lambda_verify(args):
    A = load_algebra(args.algebra)
    rep = verify_lambda_embedding(A)
    return (OK if rep.ok else FAILS), {"verdict": "holds" if rep.ok else "fails", **rep.to_dict()}


def cmd_maltsev_derive(args):
    A = load_algebra(args.algebra)
    tau = parse_tau(_read(args.tau), A.signature)
    rho = parse_rho(_read(args.rho), A.signature)
    try:
        scheme = derive_maltsev_scheme(A, tau, rho)
    except NotDerivable as exc:
        return FAILS, {"verdict": "fails", "algebra": A.name, "error": str(exc)}
    doc = scheme_to_dict(scheme)
    _write_json(args.output, doc)
    return OK, {"verdict": "derived", "algebra": A.name, "k": len(scheme), "scheme": doc}


def cmd_maltsev_check(args):
    A = load_algebra(args.algebra)
    scheme = scheme_from_dict(_json_file(args.scheme), A.signature)
    v = maltsev_scheme_check(A, scheme)
    report = {"verdict": "holds" if v else "fails", "algebra": A.name, "k": len(scheme)}
    if not v:
        w = v.witness
        report["violation"] = {"identity": w.identity, "pair": list(w.pair), "lhs": w.lhs, "rhs": w.rhs}
    return (OK if v else FAILS), report


def cmd_catalog(args):
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for key, make in BUILTIN.items():
        save_algebra(make(), out / f"{key}.json")
        names.append(key)
    return OK, {"verdict": "written", "directory": str(out), "algebras": names}


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="algcalc",
        description="Finite universal algebra workbench. Algebra arguments are JSON "
        "documents or builtin:<name> (" + ", ".join(sorted(BUILTIN)) + ").",
    )
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    p.add_argument(
        "--universe-bound", type=int, default=None,
        help=f"largest universe any construction may build (default {config.DEFAULT_UNIVERSE_BOUND}, "
        f"or ${config.BUDGET_ENV})",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("con", help="list the congruence lattice")
    s.add_argument("algebra")
    s.add_argument("--con-bound", type=int, default=config.DEFAULT_CON_BOUND,
                   help="largest universe for lattice enumeration (default %(default)s)")
    s.set_defaults(func=cmd_con)

    s = sub.add_parser("mpow", help="write the n-th matrix power")
    s.add_argument("algebra")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_mpow)

    s = sub.add_parser("check-transformers", help="verify a transformer witness")
    s.add_argument("algebra")
    s.add_argument("--tau", required=True, help="file of 'delta | epsilon' lines")
    s.add_argument("--rho", required=True, help="file of binary terms, one per line")
    s.set_defaults(func=cmd_check_transformers)

    s = sub.add_parser("search-transformers", help="bounded search for a transformer witness")
    s.add_argument("algebra")
    s.add_argument("--depth", type=int, default=2, help="term depth bound (default %(default)s)")
    s.add_argument("--max-i", type=int, default=1, help="largest |tau| (default %(default)s)")
    s.add_argument("--max-j", type=int, default=2, help="largest |rho| (default %(default)s)")
    s.add_argument("--budget", type=int, default=config.DEFAULT_SEARCH_BUDGET,
                   help="candidate budget (default %(default)s)")
    s.set_defaults(func=cmd_search_transformers)

    s = sub.add_parser("entail", help="decide a consequence over a finite class")
    s.add_argument("--k", nargs="+", required=True, metavar="ALG")
    s.add_argument("--tau", required=True)
    s.add_argument("--gamma", nargs="*", default=[], metavar="TERM")
    s.add_argument("--phi", required=True, metavar="TERM")
    s.add_argument("--vars", type=int, default=None, help="size of the variable pool")
    s.set_defaults(func=cmd_entail)

    ceq = sub.add_parser("ceq", help="congruence equations").add_subparsers(dest="ceq", required=True)
    s = ceq.add_parser("check", help="check an equation in one algebra")
    s.add_argument("algebra")
    s.add_argument("equation")
    s.add_argument("-o", "--output", help="also write the certificate here")
    s.add_argument("--budget", type=int, default=config.DEFAULT_ASSIGNMENT_BUDGET,
                   help="assignment budget (default %(default)s)")
    s.set_defaults(func=cmd_ceq_check)
    s = ceq.add_parser("find", help="search a catalog for a failing algebra")
    s.add_argument("equation")
    s.add_argument("--catalog", help="directory of algebra documents (default: bundled catalog)")
    s.add_argument("-o", "--output", help="also write the certificate here")
    s.set_defaults(func=cmd_ceq_find)
    s = ceq.add_parser("lift", help="lift a failure certificate to the matrix square")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_ceq_lift)

    s = sub.add_parser("lambda-verify", help="check the alpha ⊗ alpha embedding over Con(A)")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_lambda_verify)

    mal = sub.add_parser("maltsev", help="Maltsev schemes").add_subparsers(dest="maltsev", required=True)
    s = mal.add_parser("derive", help="derive a chain scheme from a witness")
    s.add_argument("algebra")
    s.add_argument("--tau", required=True)
    s.add_argument("--rho", required=True)
    s.add_argument("-o", "--output", help="write the scheme document here")
    s.set_defaults(func=cmd_maltsev_derive)
    s = mal.add_parser("check", help="check a scheme document")
    s.add_argument("algebra")
    s.add_argument("--scheme", required=True)
    s.set_defaults(func=cmd_maltsev_check)

    s = sub.add_parser("catalog", help="write the bundled algebras as documents")
    s.add_argument("directory")
    s.set_defaults(func=cmd_catalog)
    return p


def _print_lattice(listing: dict, out) -> None:
    print(f"lattice: {listing['count']} congruences", file=out)
    for i, blocks in enumerate(listing["congruences"]):
        text = "|" + "|".join(" ".join(map(str, b)) for b in blocks) + "|"
        above = [u for lo, u in listing["covers"] if lo == i]
        print(f"  {i:>3}  {text}  covered by {above}", file=out)


def _print_human(report: dict, out) -> None:
    for key, value in report.items():
        if key in ("timing", "bounds", "command"):
            continue
        if key == "lattice":
            _print_lattice(value, out)
        elif isinstance(value, (dict, list)):
            print(f"{key}: {json.dumps(value)}", file=out)
        else:
            print(f"{key}: {value}", file=out)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    start = time.perf_counter()
    bound_ctx = (
        config.universe_bound_override(args.universe_bound)
        if args.universe_bound is not None
        else contextlib.nullcontext()
    )
    try:
        with bound_ctx:
            code, body = args.func(args)
            bound = config.universe_bound()
    except Inconclusive as exc:
        code, body, bound = INCONCLUSIVE, {"verdict": "inconclusive", "error": str(exc)}, None
    except (AlgebraError, ValueError, OSError) as exc:
        code, body, bound = USAGE, {"verdict": "error", "error": str(exc)}, None
    report = {"command": argv, "exit_code": code, **body}
    report["bounds"] = {"universe": bound if bound is not None else config.universe_bound()}
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        _print_human(report, sys.stdout if code in (OK, FAILS, INCONCLUSIVE) else sys.stderr)
    if code == USAGE:
        print(f"algcalc: error: {body['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
