"""Command-line entry point.

Machine output goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 usage/IO/domain error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bounds import rows_to_csv
from .claims import CLAIMS, DEFAULT_LAMBDAS, ClaimDomain, run_claim
from .compression import CompressionScale
from .constructions import best_sphere, erdos_construction, greedy
from .errors import N3LError
from .geometry import read_points, verify_no_three, write_points
from .rational import parse_rational, parse_vector
from .solver import exact_max
from .table import SOURCES, bounds_row, compare_table

THREADS_ENV = "N3L_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be >= 1")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _rational(text: str):
    try:
        return parse_rational(text)
    except N3LError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sources(text: str) -> list[str]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in items if s not in SOURCES]
    if not items or bad:
        raise argparse.ArgumentTypeError(f"sources must be a comma list from {', '.join(SOURCES)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="n3l", description="No-three-in-line verification, search and claim checking.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check a points file for collinear triples")
    p.add_argument("--input", required=True, help="points file (one point per line)")
    p.add_argument("--dim", type=_positive, help="expected dimension; must match any 'dim' header")
    p.add_argument("--threads", type=_positive, help=f"worker threads (default ${THREADS_ENV} or 1)")

    p = sub.add_parser("solve", help="exact maximum for the grid {1..n}^d")
    p.add_argument("--n", type=_positive, required=True, help="grid side")
    p.add_argument("--d", type=_positive, required=True, help="dimension (>= 2)")
    p.add_argument("--time-limit", type=float, help="seconds before returning the best set so far")
    p.add_argument("--threads", type=_positive, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p.add_argument("--symmetry", action="store_true", help="restrict the first cell to a fundamental domain")
    p.add_argument("--out", help="write the witness to this points file")
    p.add_argument("--timing", action="store_true", help="report wall time in time_ms (output no longer reproducible)")

    p = sub.add_parser("construct", help="build a point set with no three collinear")
    p.add_argument("--method", choices=("sphere", "erdos", "greedy"), required=True, help="construction")
    p.add_argument("--n", type=_positive, required=True, help="grid side")
    p.add_argument("--d", type=_positive, required=True, help="dimension (>= 2; erdos needs 2)")
    p.add_argument("--seed", type=_nonnegative, default=0, help="greedy cell order seed (0 = lexicographic)")
    p.add_argument("--center", help='sphere center as "a/b,c/d" (half-integers); fixes the center')
    p.add_argument("--r2", type=_rational, help="sphere squared radius p/q (multiple of 1/4)")
    p.add_argument("--out", help="write the points to this file")

    p = sub.add_parser("claims", help="exhaustive counterexample search for one claim")
    p.add_argument("--claim", choices=CLAIMS, required=True, help="claim to check")
    p.add_argument("--max-coord", type=_positive, help="largest coordinate in the domain (all claims but gapshell)")
    p.add_argument("--d", type=_positive, required=True, help="dimension (>= 2)")
    p.add_argument("--scale", type=_rational, default=None, help="compression scale m as p/q (default 1)")
    p.add_argument("--n", type=_positive, help="grid side for gapshell")
    p.add_argument("--lambdas", help="comma list of line parameters for cornerstone "
                   f"(default {','.join(str(x) for x in DEFAULT_LAMBDAS)})")
    p.add_argument("--threads", type=_positive, help=f"worker threads (default ${THREADS_ENV} or 1)")

    p = sub.add_parser("bound", help="one bounds row as JSON")
    p.add_argument("--n", type=_positive, required=True, help="grid side")
    p.add_argument("--d", type=_positive, required=True, help="dimension (>= 2)")
    p.add_argument("--sources", type=_sources, default=[], help="optional comma list of sources for 'best'")

    p = sub.add_parser("table", help="bounds table over a range of n")
    p.add_argument("--n-from", type=_positive, required=True, help="first grid side")
    p.add_argument("--n-to", type=_positive, required=True, help="last grid side (inclusive)")
    p.add_argument("--d", type=_positive, required=True, help="dimension (>= 2)")
    p.add_argument("--sources", type=_sources, required=True, help=f"comma list from {','.join(SOURCES)}")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--threads", type=_positive, help=f"worker threads (default ${THREADS_ENV} or 1)")
    return parser


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _threads(args) -> int:
    return args.threads if getattr(args, "threads", None) else _default_threads()


def _cmd_verify(args) -> int:
    points = read_points(args.input, dim=args.dim)
    verdict = verify_no_three(points, threads=_threads(args))
    if verdict.passed:
        sys.stdout.write(f"PASS {len(points)} points\n")
        return 0
    sys.stdout.write("FAIL collinear triple:\n")
    for p in verdict.witness:
        sys.stdout.write(" ".join(str(c) for c in p) + "\n")
    return 2


def _cmd_solve(args) -> int:
    result = exact_max(args.n, args.d, time_limit=args.time_limit, threads=_threads(args),
                       symmetry_reduction=args.symmetry)
    if args.out:
        write_points(args.out, result.witness)
    _emit(result.to_json(witness_file=args.out, timing=args.timing))
    return 0


def _cmd_construct(args) -> int:
    if args.method == "greedy":
        report = greedy(args.n, args.d, args.seed)
    elif args.method == "erdos":
        if args.d != 2:
            raise UsageError("construct: erdos is a planar construction (--d 2)")
        report = erdos_construction(args.n)
    elif args.center is not None:
        report = best_sphere(args.n, args.d, "fixed-center", parse_vector(args.center), args.r2)
    else:
        report = best_sphere(args.n, args.d, "center-scan", radius_sq=args.r2)
    if args.out:
        write_points(args.out, report.points)
    _emit(report.to_json(points_file=args.out))
    return 0


def _cmd_claims(args) -> int:
    scale = CompressionScale(args.scale if args.scale is not None else 1)
    lambdas = parse_vector(args.lambdas) if args.lambdas else None
    if args.claim == "gapshell":
        if args.n is None:
            raise UsageError("claims: gapshell needs --n")
        domain = ClaimDomain(args.d, max(args.n, args.d), scale)
    else:
        if args.max_coord is None:
            raise UsageError(f"claims: {args.claim} needs --max-coord")
        kind = "rationals-from-grid" if args.claim == "admissible" else "distinct-naturals"
        domain = ClaimDomain(args.d, args.max_coord, scale, kind)
    report = run_claim(args.claim, domain, n=args.n, lambdas=lambdas, threads=_threads(args))
    _emit(report.to_json())
    return 0


def _cmd_bound(args) -> int:
    _emit(bounds_row(args.n, args.d, args.sources).to_json())
    return 0


def _cmd_table(args) -> int:
    if args.n_to < args.n_from:
        raise UsageError("table: --n-to must be >= --n-from")
    rows = compare_table(range(args.n_from, args.n_to + 1), args.d, args.sources, _threads(args))
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    else:
        _emit([r.to_json() for r in rows])
    return 0


COMMANDS = {
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "construct": _cmd_construct,
    "claims": _cmd_claims,
    "bound": _cmd_bound,
    "table": _cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (N3LError, OSError) as exc:
        print(f"n3l: error: {exc}", file=sys.stderr)
        return 1
