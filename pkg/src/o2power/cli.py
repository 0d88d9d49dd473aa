"""Command line interface: ``o2power <subcommand> ...``.

Every JSON report carries ``"schema": 1``; big integers and rationals are
emitted as strings.  Exit codes: 0 success, 2 negative mathematical answer
(not a power, not an L-power polynomial, mismatch found), 1 usage or
precondition error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import count as cnt
from . import oracle
from .classify import canonical_form, classify
from .errors import MismatchFound, NotAPower, O2PowerError
from .linalg import MatO2
from .poly import (PolyO2, fundamental_factorization, is_L_power_poly,
                   k_factor, L_power_factor)
from .power import is_lth_power, lth_root
from .ring import parse_ring

SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(obj, out):
    obj = {"schema": SCHEMA, **obj}
    out.write(json.dumps(obj, indent=2) + "\n")


def _ring(args):
    return parse_ring(args.ring)


def cmd_factor(args, out):
    R = _ring(args)
    F = PolyO2.parse(R, args.poly)
    rep = {
        "ring": str(R),
        "poly": F.to_text(),
        "reduction_factors": [{"coeffs": f.to_text(), "multiplicity": m}
                              for f, m in k_factor(F.theta(), seed=args.seed)],
        "seed": args.seed,
    }
    if F.is_monic():
        rep["fundamental"] = fundamental_factorization(F).to_json()
    _emit(rep, out)
    return 0


def cmd_is_l_power(args, out):
    R = _ring(args)
    F = PolyO2.parse(R, args.poly)
    ok = is_L_power_poly(F, args.L)
    G = L_power_factor(F, args.L) if ok else None
    _emit({"ring": str(R), "poly": F.to_text(), "L": args.L, "is_L_power": ok,
           "factor": None if G is None else G.to_text()}, out)
    return 0 if ok else 2


def cmd_classify(args, out):
    R = _ring(args)
    A = MatO2.parse(R, args.matrix)
    _emit({"ring": str(R), "matrix": A.to_text(), **classify(A).to_json()}, out)
    return 0


def cmd_canonical(args, out):
    R = _ring(args)
    A = MatO2.parse(R, args.matrix)
    _emit({"ring": str(R), "matrix": A.to_text(), **canonical_form(A).to_json()}, out)
    return 0


def cmd_is_power(args, out):
    R = _ring(args)
    A = MatO2.parse(R, args.matrix)
    d = is_lth_power(A, args.L, witness=args.witness)
    _emit({"ring": str(R), "matrix": A.to_text(), "L": args.L, **d.to_json()}, out)
    return 0 if d.is_power else 2


def cmd_root(args, out):
    R = _ring(args)
    A = MatO2.parse(R, args.matrix)
    try:
        B = lth_root(A, args.L)
    except NotAPower as exc:
        _emit({"ring": str(R), "matrix": A.to_text(), "L": args.L, "root": None, "reason": str(exc)}, out)
        return 2
    _emit({"ring": str(R), "matrix": A.to_text(), "L": args.L, "root": B.to_text()}, out)
    return 0


def cmd_genfun(args, out):
    mabs = args.mabs if args.mabs is not None else args.q
    fn = cnt.coprime_series if args.coprime else cnt.series
    s = fn(args.family, args.q, mabs, args.L, args.N)
    if args.format == "tsv":
        out.write(s.to_tsv())
    else:
        _emit({"family": args.family, "q": args.q, "mabs": mabs, "L": args.L,
               "coprime": args.coprime, "coefficients": s.to_json()}, out)
    return 0


def cmd_counts(args, out):
    mabs = args.mabs if args.mabs is not None else args.q
    rep = {"q": args.q, "mabs": mabs, "d": args.d, "N": str(cnt.count_N(args.q, args.d))}
    if args.L is not None:
        rep["L"] = args.L
        rep["N_kL"] = str(cnt.count_N_kL(args.q, args.d, args.L))
        rep["N_O2L"] = str(cnt.count_N_O2L(args.q, mabs, args.d, args.L))
    if args.n is not None:
        rep["n"] = args.n
        rep["gl_order"] = str(cnt.gl_order(args.n, args.q, mabs))
    _emit(rep, out)
    return 0


def cmd_census(args, out):
    R = _ring(args)
    if args.predicate == "families":
        if R.kind != "zp2" or args.n != 2:
            raise O2PowerError("the families census needs --ring zp2:<p> and --n 2")
        _emit({"ring": str(R), "n": 2, "families": oracle.family_partition(R.p, args.epsilon)}, out)
        return 0
    rep = oracle.census(R, args.n, args.L).to_json(timing=args.timing)
    if args.predicate:
        keys = {"rs": ("gl", "rs", "rs_classes"), "cc": ("gl", "cc", "cc_classes"),
                "image": ("gl", "image", "rs_image", "cc_image")}[args.predicate]
        rep["totals"] = {k: v for k, v in rep["totals"].items() if k in keys}
    _emit(rep, out)
    return 0


def cmd_verify(args, out):
    R = _ring(args)
    try:
        rep = oracle.verify_theorem(args.theorem, R, args.n, args.L)
    except MismatchFound as exc:
        _emit(exc.report.to_json(timing=args.timing), out)
        return 2
    _emit(rep.to_json(timing=args.timing), out)
    return 0


def cmd_table1(args, out):
    R = _ring(args)
    rows = oracle.table1(R)
    if args.format == "json":
        _emit({"ring": str(R), "reduction": "1,0,1",
               "rows": [{"coeffs": F.to_text(), "poly": F.pretty(), "irreducible": ok} for F, ok in rows]}, out)
    else:
        out.write(f"# monic quadratics over {R} reducing to t^2+1\n")
        out.write("coeffs\tpolynomial\tirreducible\n")
        for F, ok in rows:
            out.write(f"{F.to_text()}\t{F.pretty()}\t{'yes' if ok else 'no'}\n")
    return 0


def build_parser():
    p = _Parser(prog="o2power", description="L-th powers in GL_n over length-two local rings.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def ring_arg(sp, default=None):
        sp.add_argument("--ring", required=default is None, default=default,
                        help="zp2:<p> or fqu2:<p>:<m>[:<g coeffs>]")

    sp = sub.add_parser("factor", help="factor a polynomial (reduction and fundamental factors)")
    ring_arg(sp)
    sp.add_argument("--poly", required=True, help="little-endian coefficients, e.g. 7,0,3,0,1")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("is-l-power", help="is a fundamental irreducible an L-power polynomial")
    ring_arg(sp)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.set_defaults(func=cmd_is_l_power)

    sp = sub.add_parser("classify", help="classify a matrix")
    ring_arg(sp)
    sp.add_argument("--matrix", required=True, help="rows separated by ';', e.g. 3,1;5,0")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("canonical", help="canonical form with conjugator")
    ring_arg(sp)
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(func=cmd_canonical)

    sp = sub.add_parser("is-power", help="decide whether a matrix is an L-th power")
    ring_arg(sp)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--witness", action="store_true", help="also construct a root")
    sp.set_defaults(func=cmd_is_power)

    sp = sub.add_parser("root", help="construct an L-th root")
    ring_arg(sp)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.set_defaults(func=cmd_root)

    sp = sub.add_parser("genfun", help="generating function coefficients")
    sp.add_argument("--family", required=True, choices=cnt.FAMILIES)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--mabs", type=int, default=None, help="|m|, defaults to q")
    sp.add_argument("--L", type=int, default=None)
    sp.add_argument("--N", type=int, default=8)
    sp.add_argument("--coprime", action="store_true",
                    help="count with pairwise coprime reductions (what a census measures)")
    sp.add_argument("--format", choices=("json", "tsv"), default="json")
    sp.set_defaults(func=cmd_genfun)

    sp = sub.add_parser("counts", help="irreducible and L-power polynomial counts")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--L", type=int, default=None)
    sp.add_argument("--mabs", type=int, default=None)
    sp.add_argument("--n", type=int, default=None, help="also report |GL_n(O_2)|")
    sp.set_defaults(func=cmd_counts)

    sp = sub.add_parser("census", help="brute-force census of GL_n")
    ring_arg(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--L", type=int, default=None)
    sp.add_argument("--predicate", choices=("rs", "cc", "image", "families"), default=None)
    sp.add_argument("--epsilon", type=int, default=None, help="non-square unit for the H' family")
    sp.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is vectorized")
    sp.add_argument("--timing", action="store_true", help="include elapsed seconds")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify", help="check a theorem against brute force")
    sp.add_argument("--theorem", required=True, choices=("T1", "T2", "C44"))
    ring_arg(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is vectorized")
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table1", help="lifts of t^2+1 and their irreducibility")
    ring_arg(sp, default="zp2:3")
    sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sp.set_defaults(func=cmd_table1)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except O2PowerError as exc:
        sys.stderr.write(f"o2power: {type(exc).__name__}: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"o2power: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
