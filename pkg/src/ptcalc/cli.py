"""Command-line front end.

Exit codes: 0 success, 1 computational failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .basis import enumerate_basis, poincare_polynomial, top_grade
from .bounds import TcCertificate, exhaustive_zero_divisor_search, lemma_95_expand, verify_theorem
from .errors import (
    BudgetExceeded,
    EqualIndices,
    ExprSyntaxError,
    IndexOutOfRange,
    InvalidSpec,
    ObstacleCountTooSmall,
    PtcalcError,
    SpaceMismatch,
)
from .expr import evaluate, parse
from .ring import Space, SpaceSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_USAGE_ERRORS = (InvalidSpec, IndexOutOfRange, EqualIndices, SpaceMismatch, ObstacleCountTooSmall, ExprSyntaxError)

SPACES = {s.value: s for s in Space}


def _spec(args, space: Space = Space.FIBREPRODUCT_EBE) -> SpaceSpec:
    return SpaceSpec(args.n, args.m, args.k, space)


def write_certificate(cert: TcCertificate, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cert.to_dict(), fh, indent=2)
        fh.write("\n")


def read_certificate(path: str) -> TcCertificate:
    with open(path, encoding="utf-8") as fh:
        return TcCertificate.from_dict(json.load(fh))


def cmd_verify(args) -> int:
    cert = verify_theorem(_spec(args))
    print(f"tc = {cert.tc_exact} (lower {cert.lower_bound}, upper {cert.upper_bound})")
    print(f"n = {cert.n}, m = {cert.m}, k = {cert.k}: {len(cert.factor_list)} zero-divisor factors")
    print(f"witness: {cert.witness_monomial.to_expr()} with coefficient {cert.witness_coefficient}")
    print(f"wall time: {cert.elapsed_ms:.1f} ms")
    if args.json:
        write_certificate(cert, args.json)
        print(f"certificate written to {args.json}")
    return EXIT_OK


def cmd_basis(args) -> int:
    mono_list = enumerate_basis(_spec(args, SPACES[args.space]), args.grade)
    print(len(mono_list))
    for mono in mono_list:
        print(mono.to_expr())
    return EXIT_OK


def cmd_poincare(args) -> int:
    poly = poincare_polynomial(_spec(args, SPACES[args.space]))
    print(poly)
    print(" ".join(str(c) for c in poly.coefficients))
    return EXIT_OK


def _caret(err: ExprSyntaxError) -> str:
    chars = len(err.text.encode("utf-8")[: err.offset].decode("utf-8", errors="ignore"))
    return f"{err.text}\n{' ' * chars}^"


def cmd_eval(args) -> int:
    spec = _spec(args, SPACES[args.space])
    try:
        ast = parse(args.expr)
    except ExprSyntaxError as err:
        print(f"syntax error: {err}", file=sys.stderr)
        print(_caret(err), file=sys.stderr)
        return EXIT_USAGE
    print(evaluate(ast, spec).to_expr())
    return EXIT_OK


def cmd_search(args) -> int:
    spec = _spec(args)
    max_length = args.max_length if args.max_length is not None else top_grade(spec) + 1
    start = time.perf_counter()
    try:
        best = exhaustive_zero_divisor_search(spec, max_length, args.max_candidates, args.threads)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        if err.partial is not None:
            print(f"best nonzero length: {err.partial.value} (partial)")
        return EXIT_FAIL
    print(f"best nonzero length: {best.value}")
    if best.factors:
        print(f"witness product: {'*'.join(best.factors)}")
        print(f"witness term: {best.witness_coefficient} * {best.witness.to_expr()}")
    print(f"wall time: {(time.perf_counter() - start) * 1000:.1f} ms")
    return EXIT_OK


def cmd_lemma95(args) -> int:
    spec = _spec(args)
    subset = [int(t) for t in args.T.split(",") if t.strip()]
    p = args.p if args.p is not None else spec.m + 1
    direct, closed = lemma_95_expand(spec, subset, p, args.primed)
    print(f"direct:      {direct.to_expr()}")
    print(f"closed form: {closed.to_expr()}")
    same = direct == closed
    print(f"equal: {'yes' if same else 'no'}")
    return EXIT_OK if same else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptcalc",
        description="Cohomology calculator for parametrised topological complexity of Fadell-Neuwirth bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_default=1, m_default=2):
        p.add_argument("--n", type=int, default=n_default, help="number of robots")
        p.add_argument("--m", type=int, default=m_default, help="number of obstacles")
        p.add_argument("--k", type=int, default=3, help="ambient dimension (odd, >= 3)")
        return p

    p = common(sub.add_parser("verify", help="certify tc = 2n + m - 1"))
    p.add_argument("--json", metavar="PATH", help="write the JSON certificate here")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("basis", help="list the canonical basis in one grade"))
    p.add_argument("--grade", type=int, required=True)
    p.add_argument("--space", choices=sorted(SPACES), default="ebe")
    p.set_defaults(func=cmd_basis)

    p = common(sub.add_parser("poincare", help="print the Poincare polynomial"))
    p.add_argument("--space", choices=sorted(SPACES), default="ebe")
    p.set_defaults(func=cmd_poincare)

    p = common(sub.add_parser("eval", help="normalize an expression"))
    p.add_argument("expr")
    p.add_argument("--space", choices=sorted(SPACES), default="ebe")
    p.set_defaults(func=cmd_eval)

    p = common(sub.add_parser("search", help="longest nonzero product of kernel generators"))
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--max-candidates", type=int, default=100_000)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = common(sub.add_parser("lemma95", help="compare both sides of the product expansion"))
    p.add_argument("--T", required=True, help="comma-separated subset of 1..m")
    p.add_argument("--p", type=int, default=None, help="robot index in m+1..m+n (default m+1)")
    p.add_argument("--primed", action="store_true")
    p.set_defaults(func=cmd_lemma95)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USAGE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except PtcalcError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
