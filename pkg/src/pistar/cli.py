"""Command-line front end.

Exit codes: 0 success, 1 negative result (refuted claim, failed check,
unconfirmed exponent), 2 usage error, 3 unresolved ambiguity (verify-paper).
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import catalog
from .algebra import AlgebraError, StarAlgebra, SuperStarAlgebra, algebra_from_json, algebra_to_json
from .codim import MODES, RowCapExceeded, codimensions
from .evaluator import IDENTITY, PROPER_CENTRAL, EvaluationError, classify, default_workers
from .starpoly import ParseError, check_multilinear, poly


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _out(text: str) -> None:
    sys.stdout.write(text + "\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _load_algebra(args, nslots: int = 0):
    if getattr(args, "algebra_file", None):
        with open(args.algebra_file, encoding="utf-8") as fh:
            a = algebra_from_json(json.load(fh))
    elif getattr(args, "algebra", None):
        k = args.grassmann_k if args.grassmann_k is not None else max(nslots, 1)
        a = catalog.resolve(args.algebra, k)
    else:
        raise UsageError("give --algebra NAME or --algebra-file PATH")
    if isinstance(a, SuperStarAlgebra):
        raise UsageError(f"{args.algebra or args.algebra_file} is a superalgebra; "
                         "use a Grassmann envelope (A3, A4) instead")
    if not isinstance(a, StarAlgebra):
        raise UsageError("the algebra has no involution")
    return a


def _dimension(a) -> int:
    return a.dim if hasattr(a, "dim") else len(a.basis_labels)


def _threads(args) -> int:
    return args.threads if args.threads else default_workers()


# -- subcommands ---------------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for name in catalog.CATALOG_NAMES:
            entry = {"name": name}
            if "(" not in name:
                entry["dim"] = _dimension(catalog.resolve(name, args.grassmann_k or 2))
            rows.append(entry)
        if args.format == "json":
            _out(_dump(rows))
        else:
            for r in rows:
                _out(f"{r['name']:<12}{r.get('dim', '')}")
        return 0
    if not args.name:
        raise UsageError("catalog show needs a NAME")
    a = catalog.resolve(args.name, args.grassmann_k or 2)
    data = algebra_to_json(a, args.name)
    if args.format == "json":
        data["dim"] = len(data["basis"])
        _out(_dump(data))
        return 0
    _out(f"{args.name}: dimension {len(data['basis'])}")
    _out("basis: " + ", ".join(data["basis"]))
    if isinstance(a, StarAlgebra):
        _out(f"symmetric part: {a.plus.dim}, skew part: {a.minus.dim}, center: {a.center.dim}")
        _out("center basis: " + ", ".join(a.format_vector(v) for v in a.center.basis()))
    return 0


_CHECK_OK = {"identity": {IDENTITY}, "central": {IDENTITY, PROPER_CENTRAL},
             "proper-central": {PROPER_CENTRAL}}


def cmd_check(args) -> int:
    p = poly(args.poly)
    ok, slots = check_multilinear(p)
    if not ok:
        raise UsageError("the polynomial is not multilinear")
    a = _load_algebra(args, len(slots))
    verdict = classify(p, a, workers=_threads(args))
    result = {"algebra": a.name, "polynomial": p.render(), "status": verdict.status,
              "substitution": verdict.substitution,
              "witness": None}
    if verdict.witness is not None:
        result["witness"] = {"assignment": {str(v): a.format_vector(x)
                                            for v, x in sorted(verdict.witness.items())},
                             "value": a.format_vector(verdict.value)}
    if args.format == "json":
        _out(_dump(result))
    else:
        _out(f"{result['status']}")
        if result["witness"]:
            for v, x in result["witness"]["assignment"].items():
                _out(f"  {v} = {x}")
            _out(f"  value = {result['witness']['value']}")
    return 0 if verdict.status in _CHECK_OK[args.mode] else 1


def cmd_codim(args) -> int:
    a = _load_algebra(args, args.n)
    cap = args.row_cap
    r = codimensions(a, args.n, mode=args.mode, cap=cap, workers=_threads(args))
    if args.kind:
        value = {"star": r.c_star, "z": r.c_z, "delta": r.c_delta}[args.kind]
        if args.format == "json":
            _out(_dump({"n": r.n, "kind": args.kind, "value": value, "mode": r.mode}))
        else:
            _out(str(value))
        return 0
    data = r.to_json()
    data.pop("wall_time_ms")
    if args.format == "json":
        _out(_dump(data))
    else:
        _out(f"c*_{r.n} = {r.c_star}, c*z_{r.n} = {r.c_z}, c*delta_{r.n} = {r.c_delta} ({r.mode})")
    return 0


def cmd_exponent(args) -> int:
    from .exponent import builtin_witness, exponent_report, indexed_datum
    m = re.fullmatch(r"A(\d+)", args.algebra or "")
    if not m or not 1 <= int(m.group(1)) <= 14:
        raise UsageError("exponent needs --algebra A1 .. A14")
    i = int(m.group(1))
    a, d = indexed_datum(i, args.grassmann_k)
    report = exponent_report(a, d, [builtin_witness(i, a)], workers=_threads(args))
    data = report.to_json(a, d)
    if args.format == "table":
        _out(f"exp* = {report.exp_star}; exp*delta in [{report.exp_delta_lower}, "
             f"{report.exp_delta_upper}]; confirmed = {str(report.confirmed).lower()}")
        for note in report.notes:
            _out("  " + note)
    else:
        _out(_dump(data))
    return 0 if report.confirmed else 1


def cmd_lemma(args) -> int:
    from .lemma_lab import LemmaError, load_descriptor, run_descriptor
    desc = load_descriptor(args.file)
    try:
        report = run_descriptor(desc)
    except (LemmaError, AlgebraError) as exc:
        sys.stderr.write(f"lemma: {exc}\n")
        return 1
    data = report.to_json()
    if args.format == "table":
        _out(f"{report.pattern}: {report.branch} branch, alpha = {report.alpha}, "
             f"B/I -> {report.target} (dim {report.quotient_dim}), verified = {str(report.verified).lower()}")
    else:
        _out(_dump(data))
    return 0 if report.verified else 1


def cmd_verify(args) -> int:
    from .claims import builtin_ledger, load_claims, run_claims
    claims = load_claims(args.claims) if args.claims else builtin_ledger()
    only = [s for s in args.only.split(",") if s] if args.only else None
    try:
        report = run_claims(claims, only=only, workers=_threads(args))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    _out(_dump(report.to_json()) if args.format == "json" else report.table())
    return report.exit_code


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker processes (default: available cores)")
    common.add_argument("--grassmann-k", type=_positive, default=None,
                        help="Grassmann generators for A3/A4 (default: polynomial degree)")
    common.add_argument("--format", choices=("table", "json"), default=None,
                        help="output format (default: json for exponent and lemma, else table)")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--algebra", help="catalog name, e.g. A5, M(2,t), FplusF")
    source.add_argument("--algebra-file", help="algebra in the JSON interchange format")

    parser = argparse.ArgumentParser(prog="pistar", description="*-polynomial identities, "
                                     "central polynomials and codimensions of algebras with involution")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog algebras")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", parents=[common, source], help="classify a *-polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--mode", choices=tuple(_CHECK_OK), default="identity",
                   help="property that counts as success for the exit code")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("codim", parents=[common, source], help="*-codimensions of degree n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kind", choices=("star", "z", "delta"))
    p.add_argument("--mode", choices=MODES, default="exact")
    p.add_argument("--row-cap", type=_positive, default=None,
                   help="override the P*_n row guard (also PISTAR_ROW_CAP)")
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("exponent", parents=[common], help="exp* and exp*delta bounds")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_exponent, default_format="json")

    p = sub.add_parser("lemma", parents=[common], help="run a quotient construction")
    p.add_argument("--file", required=True, help="JSON descriptor {pattern, algebra, idempotents, js, e2_minus?}")
    p.set_defaults(func=cmd_lemma, default_format="json")

    p = sub.add_parser("verify-paper", parents=[common], help="re-check the claim ledger")
    p.add_argument("--claims", help="ledger JSON file (default: the shipped ledger)")
    p.add_argument("--only", help="comma-separated claim ids")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = getattr(args, "default_format", "table")
    try:
        return args.func(args)
    except (UsageError, ParseError, catalog.CatalogError, RowCapExceeded, EvaluationError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"pistar: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
