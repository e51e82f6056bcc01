"""Command-line entry point.

Exit status: 0 on success, 1 for bad input (usage, unreadable file, parse
failure), 2 when the computation itself is refused (e.g. a web graph that
is not strongly connected).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from . import __version__
from .khovanov import graded_euler, khovanov_homology
from .linkdiag import PDError, jones, kauffman_bracket, parse_pd
from .pagerank import (
    ConvergenceError,
    DanglingNodeError,
    NotIrreducibleError,
    pagerank,
    parse_edge_list,
)
from .simplicial import (
    SimplicialComplex,
    betti_numbers,
    euler_char_counts,
    product,
)

CONVENTIONS = """\
conventions:
  PD code     X(a,b,c,d): labels counterclockwise from the incoming under-strand (a -> c)
  smoothing   0: joins {a,b},{c,d}   1: joins {a,d},{b,c}
  sign        positive iff the over-strand runs d -> b, negative iff b -> d
  bracket     <D> = sum_r (-q^-1)^|r| (q+q^-1)^circles(r)
  jones       J = (-1)^x q^(2x-y) <D>, x/y = negative/positive crossings; J(unknot) = q + q^-1
  grading     deg 1 = -1, deg X = +1; vertex r sits in homological degree |r| - x,
              q-degrees shifted by 2x - y - |r|; differential raises homological degree"""

PD_GRAMMAR = "PD grammar: whitespace-separated X(a,b,c,d) tokens with labels 1..2n, plus O for each free circle"
SIMPLICIAL_FORMAT = 'simplicial JSON: {"simplices": [[v, ...], ...]} listing top simplices'
EDGE_FORMAT = "edge list: one 'src dst' pair per line, '#' starts a comment"


class InputError(Exception):
    pass


class ComputationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _source(args) -> str:
    if args.file is not None:
        if args.input is not None:
            raise InputError("give either an inline argument or --file, not both")
        return _read(args.file)
    if args.input is None:
        raise InputError("missing input: pass it inline or with --file PATH")
    return args.input


def _pd(args):
    try:
        return parse_pd(_source(args))
    except PDError as e:
        raise InputError(f"bad PD code: {e}") from None


def _complex_from(text: str) -> SimplicialComplex:
    try:
        return SimplicialComplex.from_json(text)
    except (ValueError, TypeError) as e:
        raise InputError(f"bad simplicial complex JSON: {e}") from None


def _emit_poly(p, fmt, out):
    if fmt == "json":
        print(json.dumps(p.to_json()), file=out)
    else:
        print(p, file=out)


def cmd_bracket(args, out):
    _emit_poly(kauffman_bracket(_pd(args)), args.format, out)


def cmd_jones(args, out):
    _emit_poly(jones(_pd(args)), args.format, out)


def cmd_khovanov(args, out):
    d = _pd(args)
    if args.euler:
        _emit_poly(graded_euler(d), args.format, out)
        return
    table = khovanov_homology(d)
    if args.format == "json":
        print(json.dumps(table.to_json()), file=out)
    elif args.poincare:
        print(table.poincare(), file=out)
    else:
        print("n m dim", file=out)
        for (n, m), v in table.items():
            print(n, m, v, file=out)


def cmd_chi(args, out):
    k = _complex_from(_source(args))
    chi = euler_char_counts(k)
    print(json.dumps({"chi": chi}) if args.format == "json" else chi, file=out)


def cmd_betti(args, out):
    k = _complex_from(_source(args))
    b = betti_numbers(k)
    if args.format == "json":
        print(json.dumps({str(n): v for n, v in b.items()}), file=out)
    else:
        print(" ".join(f"b{n}={v}" for n, v in b.items()), file=out)


def cmd_product(args, out):
    a = _complex_from(_read(args.first))
    b = _complex_from(_read(args.second))
    if a.is_empty() or b.is_empty():
        raise InputError("product needs two nonempty complexes")
    p = product(a, b)
    if args.format == "json":
        print(json.dumps(p.to_json()), file=out)
    else:
        print("f-vector:", " ".join(map(str, p.f_vector())), file=out)
        print("chi:", euler_char_counts(p), file=out)
        print("betti:", " ".join(f"b{n}={v}" for n, v in betti_numbers(p).items()), file=out)


def cmd_pagerank(args, out):
    try:
        g = parse_edge_list(_read(args.file))
    except ValueError as e:
        raise InputError(f"bad edge list: {e}") from None
    try:
        r = pagerank(g, tolerance=args.tol, max_iterations=args.max_iter,
                     damping=args.damping, dangling=args.dangling or "error")
    except (DanglingNodeError, NotIrreducibleError, ConvergenceError) as e:
        raise ComputationError(str(e)) from None
    if args.format == "json":
        print(json.dumps(r.to_json()), file=out)
    else:
        for v, s in r.ranking():
            print(v, f"{s:.15g}", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linearize",
                description="Jones polynomial, Khovanov homology, simplicial homology and PageRank.",
                epilog=CONVENTIONS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"linearize {__version__}\n{CONVENTIONS}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def with_input(sp, help_):
        sp.add_argument("input", nargs="?", help=help_)
        sp.add_argument("--file", help="read the input from this file instead")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    for name, fn, help_ in [("bracket", cmd_bracket, "Kauffman bracket by state sum"),
                            ("jones", cmd_jones, "Jones polynomial")]:
        sp = with_input(sub.add_parser(name, help=help_, epilog=PD_GRAMMAR), "PD code")
        sp.set_defaults(func=fn)

    sp = with_input(sub.add_parser("khovanov", help="Khovanov homology", epilog=PD_GRAMMAR), "PD code")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--table", action="store_true", help="bigraded dimensions (default)")
    mode.add_argument("--poincare", action="store_true", help="Poincaré polynomial in t, q")
    mode.add_argument("--euler", action="store_true", help="graded Euler characteristic")
    sp.set_defaults(func=cmd_khovanov)

    for name, fn, help_ in [("chi", cmd_chi, "Euler characteristic by counting simplices"),
                            ("betti", cmd_betti, "rational Betti numbers")]:
        sp = with_input(sub.add_parser(name, help=help_, epilog=SIMPLICIAL_FORMAT), "inline JSON")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("product", help="shuffle triangulation of a product", epilog=SIMPLICIAL_FORMAT)
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("pagerank", help="PageRank by power iteration", epilog=EDGE_FORMAT)
    sp.add_argument("file")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--max-iter", type=int, default=100_000)
    sp.add_argument("--damping", type=float, default=None,
                    help="extension: follow links with this probability, else teleport")
    sp.add_argument("--dangling", choices=("uniform",), default=None,
                    help="extension: spread the mass of dangling nodes uniformly")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_pagerank)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out):  # --help and --version print here
            args = parser.parse_args(argv)
        if args.command is None:
            raise InputError("no command given; see --help")
        args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=err)
        return 1
    except ComputationError as e:
        print(f"error: {e}", file=err)
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    return 0


def main() -> None:
    sys.exit(run())
