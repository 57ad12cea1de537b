"""Command-line front end.

Exit codes
  simulate: 0 Duplicator wins, 1 Spoiler wins, 2 error
  include:  0 INCLUDED, 1 NOT_INCLUDED, 3 UNKNOWN, 2 error
  fixture:  0 written, 2 error
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import fixtures
from .automata import NBA, ParseError, parse_nba, print_nba
from .gamegraph import UnsupportedCapacity, arena_size_bound, export_dot, parse_capacity
from .inclusion import Tag, decide_simulation, default_schedule, incremental_include
from .traces import parse_sigma, print_sigma

EXIT_ERROR = 2
_LOG_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}


class CliError(Exception):
    pass


def _read(path: str, kind: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {kind} file {path!r}: {exc.strerror}") from None


def _load_inputs(args):
    A = parse_nba(_read(args.A, "automaton"))
    B = parse_nba(_read(args.B, "automaton"))
    sigma = parse_sigma(_read(args.sigma, "sigma"))
    return A, B, sigma


def cmd_simulate(args) -> int:
    A, B, sigma = _load_inputs(args)
    kappa = parse_capacity(args.kappa)
    result = decide_simulation(A, B, sigma, kappa)
    stats = result.arena.stats()
    bound = 2 * arena_size_bound(A, B, sigma, kappa)
    print(f"winner: {result.winner}")
    print(f"kappa: {args.kappa}")
    print("arena: " + " ".join(f"{k}={v}" for k, v in stats.items()))
    print(f"bound: {bound} ratio={stats['vertices'] / bound:.6f}")
    if args.strategy:
        print("strategy:")
        for v, e in sorted(result.strategy.items()):
            edge = result.arena.edges[e]
            print(f"{v} {result.winner} {e} {edge.label} -> {edge.dst}")
    if args.dot:
        Path(args.dot).write_text(export_dot(result.arena), encoding="utf-8")
        print(f"dot: {args.dot}")
    return 0 if result.duplicator_wins else 1


def _schedule(args, k):
    if args.schedule:
        return [parse_capacity(tok) for tok in args.schedule.split()]
    caps = parse_capacity(args.buffer_max) if args.buffer_max else None
    return default_schedule(k, args.max_total, caps)


def cmd_include(args) -> int:
    A, B, sigma = _load_inputs(args)
    verdict = incremental_include(
        A, B, sigma, _schedule(args, sigma.k), lasso_budget=(args.stem, args.loop)
    )
    print(verdict.record())
    if not args.quiet_report:
        print(verdict.report())
    return {Tag.INCLUDED: 0, Tag.NOT_INCLUDED: 1, Tag.UNKNOWN: 3}[verdict.tag]


def cmd_fixture(args) -> int:
    try:
        obj = fixtures.get(args.name, args.n)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if isinstance(obj, NBA):
        path = out / f"{obj.name}.nba"
        path.write_text(print_nba(obj), encoding="utf-8")
    else:
        path = out / f"{args.name}.sigma"
        path.write_text(print_sigma(obj), encoding="utf-8")
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bufsim",
        description="Bounded multi-buffer simulation and trace-closure inclusion for Buchi automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--A", required=True, help="Spoiler's automaton (.nba)")
        p.add_argument("--B", required=True, help="Duplicator's automaton (.nba)")
        p.add_argument("--sigma", required=True, help="trace alphabet (.sigma)")

    sim = sub.add_parser("simulate", help="solve one buffer game")
    inputs(sim)
    sim.add_argument("--kappa", required=True, help="capacities, e.g. 1,0,2")
    sim.add_argument("--strategy", action="store_true", help="print the winner's strategy")
    sim.add_argument("--dot", metavar="FILE", help="write the arena as a DOT graph")
    sim.set_defaults(func=cmd_simulate)

    inc = sub.add_parser("include", help="incremental trace-closure inclusion test")
    inputs(inc)
    inc.add_argument("--max-total", type=int, default=2,
                     help="escalate kappa(i) = j for j = 0..N (default 2)")
    inc.add_argument("--buffer-max", metavar="LIST", help="per-buffer caps, e.g. 2,0")
    inc.add_argument("--schedule", metavar="'K0 K1 ...'",
                     help="explicit schedule, e.g. '0,0 1,0 2,0'")
    inc.add_argument("--stem", type=int, default=4, help="max lasso stem length (default 4)")
    inc.add_argument("--loop", type=int, default=3, help="max lasso loop length (default 3)")
    inc.add_argument("--quiet-report", action="store_true", help="print only the verdict record")
    inc.set_defaults(func=cmd_include)

    fix = sub.add_parser("fixture", help="write a built-in example automaton or trace alphabet")
    fix.add_argument("name", help="one of: " + ", ".join(fixtures.names()))
    fix.add_argument("n", type=int, nargs="?", help="parameter for thm33_A / thm33_B")
    fix.add_argument("--out", default=".", help="output directory (default .)")
    fix.set_defaults(func=cmd_fixture)
    return parser


def _configure_logging():
    level = os.environ.get("BUFSIM_LOG", "quiet").lower()
    logging.basicConfig(
        level=_LOG_LEVELS.get(level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ParseError, UnsupportedCapacity, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
