"""Command line interface: ``m1plus <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 internal
invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Sequence

from . import identities
from .errors import InvariantError, M1PlusError, ParseError
from .fock import FockVector, Sector, collect, from_doubled, graded_dim, to_doubled
from .grammar import format_element, format_monomial, parse_element, sort_key
from .vertex_ops import commutator_expansion, nth_product
from .weak_modules import WhittakerParams, WhittakerType, cmn_table, module_mode_action
from .whittaker import classify

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(f"{self.prog}: error: {message}", EXIT_INPUT))


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_rational_list(text: str) -> List[Fraction]:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise ParseError("expected a comma-separated list of rationals")
    return [parse_rational(t) for t in items]


def parse_index(text: str):
    q = parse_rational(text)
    return from_doubled(to_doubled(q))


def element_arg(text: str) -> FockVector:
    """Element of M(1): grammar string or one of ``omega``, ``jay``, ``vac``."""
    name = text.strip()
    if name in ("omega", "jay", "vac", "J"):
        return identities.generator(name)
    return parse_element(text, Sector.UNTWISTED)


def _rat_record(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def vector_records(v: FockVector, cyclic: str = "vac") -> List[dict]:
    out = []
    for mono, c in sorted(v.items(), key=lambda mc: sort_key(mc[0])):
        rec = {"monomial": format_monomial(mono, cyclic),
               "parts": [[str(i), e] for i, e in collect(mono)]}
        rec.update(_rat_record(c))
        out.append(rec)
    return out


def _emit_vector(v: FockVector, fmt: str, cyclic: str = "vac") -> None:
    if fmt == "structured":
        for rec in vector_records(v, cyclic):
            print(json.dumps(rec))
    else:
        print(format_element(v, cyclic))


def _cmd_product(args) -> int:
    u, v = element_arg(args.u), element_arg(args.v)
    _emit_vector(nth_product(u, args.n, v), args.format)
    return EXIT_OK


def _cmd_commutator(args) -> int:
    u, v = element_arg(args.u), element_arg(args.v)
    expansion = commutator_expansion(u, args.i, v, args.j)
    for coeff, elem, mode in expansion:
        if args.format == "structured":
            rec = {"coefficient": _rat_record(coeff), "mode": mode,
                   "element": vector_records(elem)}
            print(json.dumps(rec))
        else:
            print(f"{coeff} * ({format_element(elem)})_{{{mode}}}")
    return EXIT_OK


def _cmd_act(args) -> int:
    params = WhittakerParams(Sector.parse(args.sector), tuple(parse_rational_list(args.zeta)))
    u = element_arg(args.u)
    w = params.vector(args.w)
    result = module_mode_action(u, parse_index(args.n), w)
    _emit_vector(result.vector, args.format, cyclic="u")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        reports = identities.run_all(args.only)
    except KeyError as exc:
        raise ParseError(str(exc.args[0])) from None
    ok = True
    for rep in reports:
        ok &= rep.passed
        if args.format == "structured":
            print(json.dumps({"name": rep.name, "pass": rep.passed,
                              "residual_terms": len(rep.residual),
                              "checks": len(rep.details)}))
        else:
            print(rep.summary())
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_classify(args) -> int:
    t = WhittakerType(args.s, tuple(parse_rational_list(args.lam)))
    desc = classify(t)
    if args.format == "structured":
        print(json.dumps({"sector": desc.sector.value, "r": desc.r,
                          "zeta": [_rat_record(z) for z in desc.params.zeta],
                          "canonical": desc.canonical, "descriptor": str(desc)}))
    else:
        print(desc)
    return EXIT_OK


def _cmd_dims(args) -> int:
    d = graded_dim(args.n, args.parity)
    if args.format == "structured":
        print(json.dumps({"n": args.n, "parity": args.parity, "dim": d}))
    else:
        print(d)
    return EXIT_OK


def _cmd_cmn(args) -> int:
    table = cmn_table(args.maxdeg)
    for (m, n) in table:
        c = table[m, n]
        if args.format == "structured":
            print(json.dumps({"m": m, "n": n, **_rat_record(c)}))
        else:
            print(f"c[{m},{n}] = {c}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="structured prints one JSON record per line")

    parser = _Parser(prog="m1plus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("product", parents=[common], help="n-th product u_n v in M(1)")
    p.add_argument("-u", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-v", required=True)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("commutator", parents=[common], help="expansion of [u_i, v_j]")
    p.add_argument("-u", required=True)
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-v", required=True)
    p.add_argument("-j", type=int, required=True)
    p.set_defaults(func=_cmd_commutator)

    p = sub.add_parser("act", parents=[common], help="u_n w on a Whittaker module")
    p.add_argument("--sector", choices=("untwisted", "twisted"), required=True)
    p.add_argument("--zeta", required=True, help="comma-separated rationals, e.g. 0,2")
    p.add_argument("--u", required=True)
    p.add_argument("--n", required=True, help="integer or half-integer; use --n=-1/2 for negatives")
    p.add_argument("--w", default="u", help="module vector, cyclic vector written 'u'")
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("verify", parents=[common], help="run the identity verification suite")
    p.add_argument("--only", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="module realizing a Whittaker type")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="lambda_{floor(s/2)+1},...,lambda_s as comma-separated rationals")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("dims", parents=[common], help="graded dimension of M(1), M(1)^+ or M(1)^-")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parity", choices=("even", "odd", "all"), default="all")
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("cmn", parents=[common], help="table of c_mn")
    p.add_argument("--maxdeg", type=int, required=True)
    p.set_defaults(func=_cmd_cmn)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvariantError as exc:
        return _fail(f"internal error: {exc}", EXIT_INTERNAL)
    except (M1PlusError, ValueError) as exc:
        return _fail(f"error: {exc}", EXIT_INPUT)


def main() -> None:
    sys.exit(run())
