"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .exactnum import format_rational

FORMATS = ("text", "json")


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(map(str, x)) + ")"
    return str(x)


def _matrix_text(m) -> str:
    cells = [[""] + [_label(c) for c in m.col_labels]]
    for lab, row in zip(m.row_labels, m.rows):
        cells.append([_label(lab)] + [format_rational(x) for x in row])
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _budget(args):
    from .sqcalc import RicherBudget

    return RicherBudget(
        a_values=tuple(args.a_values),
        b_max=args.b_max,
        max_factors=args.max_factors,
        d_max=args.richer_dmax,
    )


def _relation_lines(rs) -> str:
    lines = [f"s = {rs.s}, degree {rs.degree}: {len(rs)} relation(s)"]
    for rel in rs:
        tag = f"r={rel.r} d={rel.d}"
        if rel.factors:
            tag += " factors=" + ",".join(f"({a},{b})" for a, b in rel.factors)
        lines.append(f"  [{tag}] {rel.poly.to_text()} = 0")
    return "\n".join(lines)


# --- subcommands ------------------------------------------------------------


def cmd_relations(args) -> int:
    from .ringan import relation_rank
    from .sqcalc import DirectBudget, Relation, RelationSet, relation_direct, relation_set

    if args.method == "direct":
        budget = DirectBudget(args.direct_dmax, args.direct_rmax)
        rs = RelationSet(args.kappa0, args.degree)
        for d in range(1, args.dmax + 1):
            r = args.degree + d
            if r > args.kappa0:
                rs.relations.append(Relation(args.kappa0, r, d, relation_direct(args.kappa0, r, d, budget)))
    else:
        rs = relation_set(args.kappa0, args.degree, args.dmax)
    rk = relation_rank(args.kappa0, args.degree, args.dmax)
    payload = rs.to_json()
    payload["rank"] = rk
    _emit(args, payload, _relation_lines(rs) + f"\nrank {rk}")
    return 0


def cmd_richer(args) -> int:
    from .ringan import relation_rank
    from .sqcalc import richer_relations

    budget = _budget(args)
    rs = richer_relations(args.kappa0, args.degree, budget, n=args.n)
    rk = relation_rank(args.kappa0, args.degree, args.dmax, True, budget, args.n)
    payload = rs.to_json()
    payload["budget"] = budget.to_json()
    payload["rank_with_series"] = rk
    text = _relation_lines(rs) + f"\nrank together with the series relations: {rk}"
    _emit(args, payload, text)
    return 0


def cmd_betti0(args) -> int:
    from .ringan import betti_polynomial, format_polynomial, genus0_betti

    if args.d is not None:
        v = genus0_betti(args.n, args.d, args.method)
        _emit(args, {"n": args.n, "d": args.d, "method": args.method, "betti": v}, str(v))
        return 0
    coeffs = betti_polynomial(args.n, args.method)
    text = format_polynomial(coeffs)
    _emit(args, {"n": args.n, "method": args.method, "coefficients": coeffs, "polynomial": text}, text)
    return 0


def cmd_basis(args) -> int:
    from .ringan import basis

    res = basis(args.n, args.d)
    text = "basis: " + " ".join(_label(p) for p in res.monomials)
    text += f"\ncertificate (rows kappa monomials, columns V strata), nonsingular: {res.nonsingular}\n"
    text += _matrix_text(res.certificate)
    _emit(args, res.to_json(), text)
    return 0


def cmd_socle(args) -> int:
    from .hodgeeval import SocleIntegrand, socle_integral

    psi = args.psi if args.psi is not None else [0] * args.n
    itg = SocleIntegrand(args.g, args.n, tuple(psi), tuple(args.kappa))
    val = socle_integral(itg)
    payload = {"g": args.g, "n": args.n, "psi": list(psi), "kappa": list(args.kappa), "value": format_rational(val)}
    _emit(args, payload, format_rational(val))
    return 0


def cmd_pairing(args) -> int:
    from .hodgeeval import is_length_triangular, pairing_matrix

    m = pairing_matrix(args.family, args.g, args.n, args.d)
    det = m.determinant()
    tri = is_length_triangular(m)
    payload = m.to_json()
    payload.update({"family": args.family, "determinant": format_rational(det), "length_triangular": tri})
    text = _matrix_text(m) + f"\ndeterminant {format_rational(det)}, length-triangular: {tri}"
    _emit(args, payload, text)
    return 0


def cmd_series(args) -> int:
    from .powerseries import alpha, beta, chain_polynomial, connected_coeff

    if args.kind == "alpha":
        vals = [alpha(l) for l in range(1, args.order + 1)]
    elif args.kind == "beta":
        vals = [beta(l) for l in range(1, args.order + 1)]
    elif args.kind == "chain":
        polys = {r: [format_rational(c) for c in chain_polynomial(r)] for r in range(args.order + 1)}
        text = "\n".join(f"p_{r}: " + " ".join(cs) for r, cs in polys.items())
        _emit(args, {"kind": "chain", "coefficients": polys}, text)
        return 0
    else:
        vals = [connected_coeff(args.r, d)[0] for d in range(1, args.order + 1)]
    strs = [format_rational(v) for v in vals]
    _emit(args, {"kind": args.kind, "values": strs}, " ".join(strs))
    return 0


def cmd_express(args) -> int:
    from .ringan import find_generator_relation

    rel = find_generator_relation(args.kappa0, args.l, args.dcap)
    payload = {"s": args.kappa0, "l": args.l, "r": rel.r, "d": rel.d, "terms": rel.poly.to_json()}
    text = f"[r={rel.r} d={rel.d}] {rel.poly.to_text()} = 0"
    _emit(args, payload, text)
    return 0


def cmd_universality(args) -> int:
    from .ringan import universality_report

    rows = universality_report(args.g, args.n, args.d, _budget(args))
    lines = [f"M^c_{{{args.g},{args.n}}}"]
    for r in rows:
        lines.append(
            f"  d={r.d}: predicted {r.predicted}, upper {r.upper_bound}, lower {r.lower_bound}: {r.verdict}"
        )
    _emit(args, {"g": args.g, "n": args.n, "rows": [r.to_json() for r in rows]}, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    report = print if args.format == "text" else None
    results = run_suite(slow=args.slow, only=set(args.only) if args.only else None, report=report)
    failed = [chk.number for chk, ok, _, _ in results if not ok]
    if args.format == "json":
        print(json.dumps(
            {
                "suite": args.suite,
                "slow": args.slow,
                "results": [
                    {"criterion": c.number, "title": c.title, "pass": ok, "detail": det, "seconds": round(dt, 2)}
                    for c, ok, det, dt in results
                ],
            },
            indent=2,
        ))
    else:
        print(f"{len(results) - len(failed)}/{len(results)} passed")
    return 1 if failed else 0


# --- parser -----------------------------------------------------------------


def _add_budget_flags(p):
    p.add_argument("--a-values", type=_int_list, default=[1, 2, 3], help="section powers a (default 1,2,3)")
    p.add_argument("--b-max", type=_nonneg, default=None, help="largest omega power b (default: degree)")
    p.add_argument("--max-factors", type=_nonneg, default=2, help="most curve-class factors (default 2)")
    p.add_argument("--richer-dmax", type=_positive, default=None, help="light marks for richer relations (default: degree)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kapparing", description="kappa rings of moduli of curves of compact type")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("relations", parents=[common], help="series relations of one degree")
    p.add_argument("--kappa0", type=int, required=True, help="s = 2g-2+n")
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--dmax", type=_positive, required=True, help="largest number of light marks d")
    p.add_argument("--method", choices=("series", "direct"), default="series")
    p.add_argument("--direct-dmax", type=_positive, default=5, help="direct expansion budget on d")
    p.add_argument("--direct-rmax", type=_positive, default=14, help="direct expansion budget on r")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("richer", parents=[common], help="relations with curve-class factors")
    p.add_argument("--kappa0", type=int, required=True)
    p.add_argument("--degree", type=_positive, required=True)
    p.add_argument("--n", type=_nonneg, default=0, help="number of markings (default 0)")
    p.add_argument("--dmax", type=_positive, default=None, help="light marks for series relations (default: degree)")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_richer)

    p = sub.add_parser("betti0", parents=[common], help="Betti numbers of kappa^*(M^c_{0,n})")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None, help="one degree only")
    p.add_argument("--method", choices=("formula", "pairing", "relations"), default="formula")
    p.set_defaults(func=cmd_betti0)

    p = sub.add_parser("basis", parents=[common], help="certified basis of kappa^d(M^c_{0,n})")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("socle", parents=[common], help="lambda_g integral of psi and kappa classes")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--psi", type=_int_list, default=None, help="psi exponents a_1,...,a_n (default zeros)")
    p.add_argument("--kappa", type=_int_list, default=[], help="kappa partition, e.g. 2,1")
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("pairing", parents=[common], help="pairing matrix of a strata family")
    p.add_argument("--family", required=True, choices=("mu", "nu", "omega", "omega_prime", "genus0_V", "w", "w_tilde"))
    p.add_argument("--g", type=_nonneg, default=0)
    p.add_argument("--n", type=_nonneg, default=None)
    p.add_argument("--d", type=_nonneg, default=None)
    p.set_defaults(func=cmd_pairing)

    p = sub.add_parser("series", parents=[common], help="alpha, beta, chain polynomials, connected counts")
    p.add_argument("--kind", choices=("alpha", "beta", "chain", "connected"), required=True)
    p.add_argument("--order", type=_positive, default=4)
    p.add_argument("--r", type=_nonneg, default=2, help="r for --kind connected (values C_r^1..C_r^order)")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("express", parents=[common], help="relation eliminating kappa_l")
    p.add_argument("--kappa0", type=int, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--dcap", type=_positive, default=12)
    p.set_defaults(func=cmd_express)

    p = sub.add_parser("universality", parents=[common], help="compare with the genus-0 prediction")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--d", type=_int_list, default=None, help="degrees, e.g. 5,6 (default: all)")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_universality)

    p = sub.add_parser("verify", parents=[common], help="replay the fixture suite")
    p.add_argument("--suite", choices=("paper",), default="paper")
    p.add_argument("--slow", action="store_true", help="include the n = 11, 12 Betti polynomials")
    p.add_argument("--only", type=_int_list, default=None, help="criterion numbers, e.g. 1,7")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    from .ringan.analysis import THREADS_ENV, _workers

    if os.environ.get(THREADS_ENV) is not None:
        try:
            _workers()
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
