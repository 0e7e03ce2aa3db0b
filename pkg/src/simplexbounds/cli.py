"""Command-line interface: ``simplexbounds <subcommand> [options]``.

Exit status is 0 on success, 1 on usage or input errors and 2 when a
certificate row comes out VIOLATED (an internal invariant failure).
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import report as rp
from .certify import RangeInfo, RangeSource
from .fixtures import get_fixture
from .graphs import GraphFormatError, parse_edge_list
from .polya import format_certificate, polya_bound, polya_certificate
from .polycore import ParseError, as_homogeneous, parse_polynomial

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_r_spec(text: str) -> List[int]:
    """``"4"``, ``"2,3,7"`` or ``"2..8"`` (inclusive); items may be mixed."""
    out = []
    for item in text.split(","):
        item = item.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)", item)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise UsageError(f"empty r range {item!r}")
            out.extend(range(lo, hi + 1))
        elif item.isdigit():
            out.append(int(item))
        else:
            raise UsageError(f"bad r specification {item!r}")
    if any(r < 1 for r in out):
        raise UsageError("r values must be >= 1")
    return sorted(set(out))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _infer_n(text: str) -> int:
    idx = [int(m) for m in re.findall(r"x\s*(\d+)", text)]
    if not idx:
        raise UsageError("cannot infer the number of variables; pass --n")
    return max(idx)


def _add_common(p: argparse.ArgumentParser, graph: bool = False) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--poly", help="inline polynomial, e.g. '3/2*x1^3 - x1*x2*x3'")
    src.add_argument("--file", type=Path, help="file holding one polynomial expression")
    src.add_argument("--fixture", help="named built-in input (example-2.1, example-4.1, c5, petersen, ...)")
    if graph:
        src.add_argument("--graph", type=Path, help="edge-list file: 'u v' per line, optional 'p V E' header")
    p.add_argument("--n", type=int, help="number of variables (inferred from the expression if omitted)")
    p.add_argument("--r", default="2..6", help="grid parameters: 'a..b', comma list, or mix (default 2..6)")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--workers", type=int, default=1, help="processes for partitioned enumeration")
    p.add_argument("--grid-cap", type=int, default=rp.DEFAULT_GRID_CAP, help="refuse grids larger than this")
    p.add_argument("--timing", action="store_true", help="include wall time in json/csv output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplexbounds", description="Exact grid / Polya bounds for polynomial minimization over the simplex.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="grid upper bound and Polya lower bound per r")
    _add_common(p)

    p = sub.add_parser("certify", help="check the gap against every applicable error bound")
    _add_common(p)
    p.add_argument("--fmin", type=_rational, help="exact simplex minimum, as p/q")
    p.add_argument("--fmax", type=_rational, help="exact simplex maximum, as p/q")

    p = sub.add_parser("stableset", help="bounds on the stability number via Motzkin-Straus")
    _add_common(p, graph=True)

    p = sub.add_parser("crossover", help="compare the general coefficient with the summed prior coefficient")
    p.add_argument("--d", type=int, help="degree (default 4 with --fixture example-5.1)")
    p.add_argument("--r-max", type=int, default=50)
    p.add_argument("--fixture")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("polya-cert", help="emit the coefficient certificate of a Polya bound")
    _add_common(p)
    p.add_argument("--lambda", dest="lam", type=_rational, help="lambda to certify (default: the bound itself)")
    return parser


def _load_polynomial(args):
    if args.fixture:
        fx = get_fixture(args.fixture)
        if fx.polynomial is None:
            raise UsageError(f"fixture {fx.name!r} has no polynomial (try the crossover command)")
        n = args.n or 2
        return fx.polynomial(n), (fx.range(n) if fx.range else None)
    if args.poly is not None:
        text = args.poly
    elif args.file is not None:
        try:
            text = args.file.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("an input is required: --poly, --file or --fixture")
    n = args.n or _infer_n(text)
    f = as_homogeneous(parse_polynomial(text, n))
    if f.d < 1:
        raise UsageError("constant polynomial: bounds need degree >= 1")
    return f, None


def _emit(rep, args, out) -> None:
    if args.format == "json":
        out.write(rp.to_json(rep, args.timing))
    elif args.format == "csv":
        out.write(rp.to_csv(rep, args.timing))
    else:
        out.write(rp.to_table(rep))


def _run(args, out) -> int:
    if args.command == "crossover":
        d = args.d
        if args.fixture:
            fx = get_fixture(args.fixture)
            if fx.crossover_degree is None:
                raise UsageError(f"fixture {fx.name!r} is not a coefficient-table fixture")
            d = d or fx.crossover_degree
        if d is None or d < 2:
            raise UsageError("crossover needs --d >= 2")
        _emit(rp.crossover_report(d, args.r_max), args, out)
        return EXIT_OK

    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    rs = parse_r_spec(args.r)
    kw = dict(workers=args.workers, grid_cap=args.grid_cap)

    if args.command == "stableset":
        if args.graph is not None:
            try:
                g = parse_edge_list(args.graph.read_text(encoding="utf-8"))
            except OSError as exc:
                raise UsageError(str(exc)) from None
        elif args.fixture and get_fixture(args.fixture).graph is not None:
            g = get_fixture(args.fixture).graph()
        else:
            raise UsageError("stableset needs --graph or a graph fixture (c5, petersen, k4)")
        rep = rp.stableset_report(g, rs, **kw)
        _emit(rep, args, out)
        return EXIT_VIOLATED if rep.violated else EXIT_OK

    f, rng = _load_polynomial(args)

    if args.command == "bounds":
        _emit(rp.bounds_report(f, rs, **kw), args, out)
        return EXIT_OK

    if args.command == "certify":
        if (args.fmin is None) != (args.fmax is None):
            raise UsageError("--fmin and --fmax must be given together")
        if args.fmin is not None:
            rng = RangeInfo(args.fmin, args.fmax, RangeSource.CLOSED_FORM)
        rep = rp.certify_report(f, rs, rng, **kw)
        _emit(rep, args, out)
        return EXIT_VIOLATED if rep.violated else EXIT_OK

    if args.command == "polya-cert":
        if len(rs) != 1:
            raise UsageError("polya-cert takes a single r")
        r = rs[0]
        if r < f.d:
            raise UsageError(f"polya-cert needs r >= d = {f.d}")
        rp._check_cap(f.n, r, args.grid_cap)
        lam = args.lam if args.lam is not None else polya_bound(f, r, args.workers).value
        coeffs = polya_certificate(f, r, lam)
        if args.format == "table":
            out.write(format_certificate(coeffs, r, lam))
        else:
            rep = rp.Report("polya-cert", {"n": f.n, "d": f.d, "r": r, "lambda": lam,
                                           "nonnegative": all(c >= 0 for c in coeffs.values())})
            rep.extra = [{"alpha": list(a), "coefficient": coeffs[a]} for a in sorted(coeffs, reverse=True)]
            _emit(rep, args, out)
        return EXIT_OK
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _run(args, out)
    except (UsageError, ParseError, GraphFormatError, rp.GridTooLarge, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"simplexbounds: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
