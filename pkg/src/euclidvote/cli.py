"""Command-line interface: ``euclidvote <command> [options]``.

Every command prints JSON on standard output.  The exit status is 0 whenever
the computation succeeds, whatever the outcome; ``solve --check`` turns a
mismatching outcome into exit status 1.  Input errors exit with status 2.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from . import __version__
from .errors import DimensionMismatchError, EuclidVoteError
from .generate import CONFIGS, generate
from .geometry import VoterSet
from .oracle import best_response, evaluate, find_rado_point, guaranteed_votes
from .plot import render_svg
from .serialize import (
    FORMATS,
    best_response_doc,
    coords,
    dumps,
    emit_points,
    parse_coords,
    parse_number,
    parse_points,
    scores_doc,
    verdict_doc,
)
from .solver import solve

log = logging.getLogger("euclidvote")


def _read_input(args) -> VoterSet:
    if args.input and args.input != "-":
        with open(args.input, "rb") as fh:
            data = fh.read()
    else:
        data = sys.stdin.buffer.read()
    fmt = args.format
    if fmt is None:
        if args.input and args.input.lower().endswith(".csv"):
            fmt = "csv"
        elif args.input and args.input.lower().endswith(".json"):
            fmt = "json"
        else:
            fmt = "json" if data.lstrip().startswith(b"{") else "csv"
    return parse_points(data, fmt)


def _point(text: str, s: VoterSet, flag: str) -> tuple:
    p = parse_coords(text)
    if len(p) != s.dim:
        raise DimensionMismatchError(f"{flag} has {len(p)} coordinates but the voters have {s.dim}")
    return p


def _write(text: str) -> None:
    sys.stdout.write(text)


def _write_file(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_solve(args) -> int:
    s = _read_input(args)
    start = time.perf_counter()
    verdict = solve(s, workers=args.threads)
    elapsed = time.perf_counter() - start
    _write(dumps(verdict_doc(verdict, elapsed if args.timing else None)))
    if args.svg:
        _write_file(args.svg, render_svg(s, verdict))
    if args.check and verdict.outcome.value != args.check:
        print(f"check failed: expected {args.check}, got {verdict.outcome.value}", file=sys.stderr)
        return 1
    return 0


def cmd_eval(args) -> int:
    s = _read_input(args)
    a = _point(args.alice, s, "--alice")
    b = _point(args.bob, s, "--bob")
    _write(dumps(scores_doc(evaluate(s, a, b))))
    return 0


def cmd_best_response(args) -> int:
    s = _read_input(args)
    a = _point(args.alice, s, "--alice")
    _write(dumps(best_response_doc(best_response(s, a))))
    return 0


def cmd_depth(args) -> int:
    s = _read_input(args)
    p = _point(args.point, s, "--point")
    _write(dumps({"point": coords(p), "depth": guaranteed_votes(s, p), "n": len(s)}))
    return 0


def cmd_rado(args) -> int:
    s = _read_input(args)
    p, count = find_rado_point(s)
    bound = ceil(Fraction(len(s), s.dim + 1))
    _write(dumps({"point": coords(p), "count": count, "bound": bound, "n": len(s)}))
    return 0


def cmd_gen(args) -> int:
    shift = None if args.shift is None else parse_number(args.shift)
    s = generate(args.config, n=args.n, m=args.m, d=args.d, seed=args.seed, shift=shift, box=args.box)
    text = emit_points(s)
    if args.out:
        _write_file(args.out, text)
    else:
        _write(text)
    return 0


def cmd_plot(args) -> int:
    s = _read_input(args)
    verdict = None if args.no_solve else solve(s)
    svg = render_svg(s, verdict)
    if args.svg:
        _write_file(args.svg, svg)
    else:
        _write(svg)
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="euclidvote", description="Exact solver for the two-candidate Euclidean voting game.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    inp = argparse.ArgumentParser(add_help=False)
    inp.add_argument("--in", dest="input", metavar="PATH", help="voter file (default: standard input)")
    inp.add_argument("--format", choices=FORMATS, help="input format (default: from the file suffix or content)")

    p = sub.add_parser("solve", parents=[inp], help="decide the game and report the winning point or a witness")
    p.add_argument("--check", choices=("alice", "bob"), help="exit 1 unless the outcome matches")
    p.add_argument("--threads", type=_positive_int, default=None, help="scan candidates with N threads")
    p.add_argument("--svg", metavar="PATH", help="also write a plot (d = 2 only)")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in the stats")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eval", parents=[inp], help="score fixed placements for Alice and Bob")
    p.add_argument("--alice", required=True, metavar="COORDS")
    p.add_argument("--bob", required=True, metavar="COORDS")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("best-response", parents=[inp], help="Bob's optimal reply to Alice (d <= 3)")
    p.add_argument("--alice", required=True, metavar="COORDS")
    p.set_defaults(func=cmd_best_response)

    p = sub.add_parser("depth", parents=[inp], help="votes Alice is guaranteed at a point (d <= 3)")
    p.add_argument("--point", required=True, metavar="COORDS")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("rado", parents=[inp], help="a point of maximal guaranteed votes (d <= 3)")
    p.set_defaults(func=cmd_rado)

    p = sub.add_parser("gen", help="write a named voter configuration as JSON")
    p.add_argument("--config", required=True, choices=CONFIGS)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--shift", metavar="P/Q")
    p.add_argument("--box", type=int)
    p.add_argument("--out", metavar="PATH", help="write here instead of standard output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("plot", parents=[inp], help="draw voters and the verdict as SVG (d = 2 only)")
    p.add_argument("--svg", metavar="PATH", help="output file (default: standard output)")
    p.add_argument("--no-solve", action="store_true", help="draw the voters only")
    p.set_defaults(func=cmd_plot)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("EUCLIDVOTE_LOG", "").strip().upper()
    if not level:
        return
    logging.basicConfig(
        level=getattr(logging, level, logging.DEBUG) if not level.isdigit() else int(level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EuclidVoteError, OSError) as e:
        print(f"euclidvote: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
