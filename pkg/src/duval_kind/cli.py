"""Command-line surface: classify, fundamental-cycle, integral-table, residue.

Exit codes: 0 success, 2 bad arguments / malformed input, 3 numeric
budget exceeded, 4 graph not negative definite.  Payload goes to stdout,
diagnostics to stderr.  The WORKERS environment variable (default 1)
controls quadrature parallelism; single-worker runs are byte-identical.
"""

from __future__ import annotations

import argparse
import sys

from .classify import classify
from .cycles import CycleError, fundamental_cycle, is_reduced
from .dual_graph import (
    GraphInvariantError,
    ParameterError,
    build_dynkin,
    intersection_form,
    is_negative_definite,
    load_graph,
)
from .models import duval_equation
from .poly import PolynomialParseError, differentiate, parse_polynomial
from .quadrature import QuadratureBudgetError, QuadratureRangeError, integral_Ik

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_NOT_NEGATIVE_DEFINITE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exit code is already 2
        self.print_usage(sys.stderr)
        raise SystemExit2(message)


class SystemExit2(Exception):
    def __init__(self, message):
        super().__init__(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="duval-kind", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="kind verdict for an ADE type")
    p_classify.add_argument("type", choices=["A", "D", "E"])
    p_classify.add_argument("index", type=int)
    p_classify.add_argument("--numerics", action="store_true")
    p_classify.add_argument("--tol", type=float, default=1e-4)
    p_classify.add_argument(
        "--format", choices=["plain", "structured"], default="plain"
    )

    p_cycle = sub.add_parser(
        "fundamental-cycle", help="fundamental cycle of an ADE type or graph file"
    )
    p_cycle.add_argument("type", nargs="?", choices=["A", "D", "E"])
    p_cycle.add_argument("index", nargs="?", type=int)
    p_cycle.add_argument("--graph", metavar="FILE")
    p_cycle.add_argument(
        "--format", choices=["plain", "structured"], default="plain"
    )

    p_table = sub.add_parser(
        "integral-table", help="annulus integral table for an A_n singularity"
    )
    p_table.add_argument("--type", choices=["A", "D", "E"], default="A")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--kmax", type=int, default=3)
    p_table.add_argument("--tol", type=float, default=1e-4)
    p_table.add_argument(
        "--format", choices=["plain", "csv"], default="csv"
    )

    p_residue = sub.add_parser(
        "residue", help="hypersurface equation and residue denominator"
    )
    p_residue.add_argument("type", nargs="?", choices=["A", "D", "E"])
    p_residue.add_argument("index", nargs="?", type=int)
    p_residue.add_argument("--equation", metavar="POLY")

    return parser


def _cmd_classify(args) -> int:
    report = classify(args.type, args.index, with_numerics=args.numerics, rel_tol=args.tol)
    if args.format == "structured":
        print(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK


def _cmd_cycle(args) -> int:
    if args.graph is not None:
        g = load_graph(args.graph)
        if not is_negative_definite(intersection_form(g)):
            print("graph is not negative definite", file=sys.stderr)
            return EXIT_NOT_NEGATIVE_DEFINITE
    elif args.type is not None and args.index is not None:
        g = build_dynkin(args.type, args.index)
    else:
        raise SystemExit2("expected either --graph FILE or an ADE type and index")
    z = fundamental_cycle(g)
    if args.format == "structured":
        import json

        print(
            json.dumps(
                {
                    "coefficients": list(z.coefficients),
                    "reduced": is_reduced(z),
                },
                indent=2,
            )
        )
    else:
        flag = "reduced" if is_reduced(z) else "not reduced"
        print(" ".join(str(c) for c in z.coefficients) + ", " + flag)
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.type != "A":
        raise SystemExit2("integral table defined only for the A series")
    if args.n < 1:
        raise SystemExit2(f"n must be >= 1, got {args.n}")
    if not 1 <= args.kmax <= 4:
        raise SystemExit2(f"kmax must be in 1..4, got {args.kmax}")
    rows = []
    for k in range(1, args.kmax + 1):
        res = integral_Ik(args.n, k, args.tol)
        rows.append(
            (
                k,
                res.value,
                res.error_estimate,
                res.truncation_bound,
                res.subregions_used,
            )
        )
    if args.format == "csv":
        print("k,value,error,truncation_bound,subregions")
        for k, value, err, trunc, regions in rows:
            print(f"{k},{value:.17e},{err:.17e},{trunc:.17e},{regions}")
    else:
        print("k value error truncation_bound subregions")
        for k, value, err, trunc, regions in rows:
            print(f"{k} {value:.17e} {err:.17e} {trunc:.17e} {regions}")
    return EXIT_OK


def _cmd_residue(args) -> int:
    if args.equation is not None:
        f = parse_polynomial(args.equation)
        print(f"f = {f}")
        print(f"df/dz = {differentiate(f, 'z')}")
    elif args.type is not None and args.index is not None:
        germ = duval_equation(args.type, args.index)
        print(f"f = {germ.equation}")
        print(f"df/dz = {germ.residue_denominator}")
    else:
        raise SystemExit2("expected either --equation POLY or an ADE type and index")
    return EXIT_OK


_HANDLERS = {
    "classify": _cmd_classify,
    "fundamental-cycle": _cmd_cycle,
    "integral-table": _cmd_table,
    "residue": _cmd_residue,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolynomialParseError as exc:
        arg_text = ""
        print(f"error: {exc}", file=sys.stderr)
        if exc.position >= 0:
            # caret aligned under the offending character
            source = _parse_source(argv)
            if source is not None:
                print(f"  {source}", file=sys.stderr)
                print("  " + " " * exc.position + "^", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, GraphInvariantError, QuadratureRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_NEGATIVE_DEFINITE
    except QuadratureBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _parse_source(argv: list[str] | None) -> str | None:
    args = argv if argv is not None else sys.argv[1:]
    for i, a in enumerate(args):
        if a == "--equation" and i + 1 < len(args):
            return args[i + 1]
        if a.startswith("--equation="):
            return a.split("=", 1)[1]
    return None


if __name__ == "__main__":
    raise SystemExit(main())
