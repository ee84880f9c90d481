"""Command line: ``oiplex solve | gen | bench``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import ValuationMismatch, parse_sizes, run_bench
from .fileformat import GameSyntaxError, format_number, parse_game, write_game
from .game import GameError, as_rational, strategy_targets
from .generator import BadParams, random_game
from .oi import OiConfig, solve_oi
from .oracle import TooLarge, enumerate_solve, greedy_strategy, solve_exact
from .perturbation import BadInterval, offset_factors
from .si import SiConfig, solve_si

EXIT_INPUT = 2
EXIT_MISMATCH = 3


class InputError(Exception):
    pass


def _pair(text: str) -> tuple[str, str]:
    lo, sep, hi = text.partition(":")
    if not sep or not lo or not hi:
        raise InputError(f"expected lo:hi, got {text!r}")
    return lo, hi


def _read_game(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_game(text)
    except GameSyntaxError as exc:
        raise InputError(f"{path}: {exc}") from None
    except GameError as exc:
        raise InputError(f"{path}: invalid game: {exc}") from None


def cmd_solve(args) -> int:
    g = _read_game(args.input)
    stats = None
    if args.algo == "oi":
        alpha = None
        if args.alpha != "off":
            try:
                alpha = offset_factors(g, args.seed, _pair(args.alpha))
            except (BadInterval, ValueError) as exc:
                raise InputError(f"--alpha: {exc}") from None
        val, sigma, stats = solve_oi(g, OiConfig(seed=args.seed, init=args.init, alpha=alpha))
    elif args.algo == "si":
        val, sigma, stats = solve_si(g, SiConfig(seed=args.seed, init=args.init))
    elif args.algo == "vi":
        val, sigma = solve_exact(g)
    else:
        try:
            val = enumerate_solve(g)
        except TooLarge as exc:
            raise InputError(str(exc)) from None
        sigma = greedy_strategy(g, val)
    targets = strategy_targets(g, sigma)
    counters = None
    if stats is not None:
        counters = {
            "lp_calls": stats.lp_calls,
            "strategy_updates": stats.strategy_updates,
            "nonlocal_events": stats.nonlocal_events,
            "pivots": stats.pivots,
        }
    if args.json:
        out = {
            "algo": args.algo,
            "values": [format_number(x) for x in val],
            "strategy": list(targets),
            "edges": list(sigma),
            "stats": counters,
        }
        print(json.dumps(out))
        return 0
    print(f"# {args.algo} on {args.input}")
    for v in range(g.n):
        print(f"{v} {g.owner[v].value} value {format_number(val[v])} -> {targets[v]}")
    if counters:
        print(" ".join(f"{k}={n}" for k, n in counters.items()))
    return 0


def cmd_gen(args) -> int:
    lo, hi = _pair(args.weights)
    try:
        g = random_game(args.n, args.outdeg, (as_rational(lo), as_rational(hi)), as_rational(args.lam), args.seed)
    except (BadParams, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    text = write_game(g)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = parse_sizes(args.sizes)
        algos = [a.strip() for a in args.algos.split(",") if a.strip()]
        lo, hi = _pair(args.weights)
        weights = (as_rational(lo), as_rational(hi))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        run = run_bench(sizes, args.cluster, args.outdeg, algos, args.seed, weights, args.lam)
    except ValuationMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (BadParams, ValueError) as exc:
        raise InputError(str(exc)) from None
    if args.csv:
        Path(args.csv).write_text(run.csv_text())
        if run.failures:
            Path(args.csv + ".failures.csv").write_text(run.failures_csv_text())
    else:
        sys.stdout.write(run.csv_text())
    table = run.means_table()
    if args.means:
        Path(args.means).write_text(table)
    else:
        sys.stdout.write(table)
    sys.stderr.write(run.summary())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oiplex", description="Exact discounted payoff game solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a game file")
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--algo", choices=["oi", "si", "vi", "enum"], default="oi")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--init", choices=["first", "random"], default="first")
    s.add_argument("--alpha", default="off", help="offset factor interval lo:hi, or off")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    gen = sub.add_parser("gen", help="write a random game")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--outdeg", default="2", help="2, 5-10 or 10pct")
    gen.add_argument("--weights", default="-250:250")
    gen.add_argument("--lambda", dest="lam", default="9/10")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", "-o")
    gen.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="compare algorithms on random games")
    b.add_argument("--sizes", required=True, help="a:b:step, inclusive")
    b.add_argument("--cluster", type=int, default=10, help="games per size")
    b.add_argument("--outdeg", default="2")
    b.add_argument("--algos", default="oi,si")
    b.add_argument("--weights", default="-250:250")
    b.add_argument("--lambda", dest="lam", default="9/10")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", help="CSV output file (default stdout)")
    b.add_argument("--means", help="means table file (default stdout)")
    b.set_defaults(func=cmd_bench)
    return p


RANGE_OPTIONS = ("--weights", "--alpha", "--sizes", "--lambda")


def _join_ranges(argv: list[str]) -> list[str]:
    """``--weights -250:250`` would read as an option; glue such values to their flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in RANGE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_ranges(argv))
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
