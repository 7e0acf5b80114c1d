"""``arithgames`` command line: compute, verify, solve, export, plot and play."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, arith, engine, posexpr, theorems
from .errors import (
    CapacityError, DomainError, GameError, OracleRefusal, PartialTableError, PositionSyntaxError,
    TableLimitError, UnknownRulesetError, UsageError,
)
from .rulesets import allowed_set, lookup, registry

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
# largest heap the engine evaluates before falling back to a closed form
ENGINE_HEAP_LIMIT = 200_000


def _values_for(rs, n: int, closed: bool):
    """A value source covering ``n`` and its provenance label."""
    has_closed = theorems.has_closed_form(rs)
    if closed and not has_closed:
        raise UsageError(f"{rs.name} has no closed form")
    if closed or (has_closed and n > ENGINE_HEAP_LIMIT):
        return theorems.ClosedFormValues(rs), "closed-form"
    try:
        return engine.cached_table(rs, n), "engine"
    except PartialTableError:
        if not has_closed:
            raise
        return theorems.ClosedFormValues(rs), "closed-form"


def cmd_sg(args, out) -> int:
    rs = lookup(args.ruleset)
    rs.check(args.n)
    src, label = _values_for(rs, args.n, args.closed_form)
    print(src[args.n], file=out)
    print(f"source: {label}", file=out)
    if rs.semantics.is_powerset:
        base = allowed_set(rs, args.n)
        vals = [src[h] for h in base]
        print(f"allowed set ({len(base)}): " + ", ".join(f"{h}:{v}" for h, v in zip(base, vals)), file=out)
        return EXIT_OK
    opts = engine.component_options(rs, args.n)
    print(f"options ({len(opts)}):", file=out)
    for opt in opts:
        v = 0
        for h in opt:
            v ^= src[h]
        print(f"  {analysis.format_sum(opt)}  ->  {v}", file=out)
    return EXIT_OK


def cmd_seq(args, out) -> int:
    rs = lookup(args.ruleset)
    if args.closed_form:
        table = theorems.closed_form_table(rs, args.to)
    else:
        table = engine.sg_table(rs, args.to)
    print(", ".join(map(str, table.sequence())), file=out)
    return EXIT_OK


def cmd_solve(args, out) -> int:
    pos = posexpr.parse(args.position)
    tables = _closed_sources(pos)
    value = engine.sum_value(pos, tables)
    if value == 0:
        print("P-position (value 0), no winning moves", file=out)
        return EXIT_OK
    moves = engine.winning_moves(pos, tables)
    print(f"N-position (value {value}), {len(moves)} winning move{'s' if len(moves) != 1 else ''}:", file=out)
    for m in moves:
        print(f"  {m}  =>  {m.apply(pos)}", file=out)
    return EXIT_OK


def _closed_sources(pos: engine.Position) -> dict:
    """Closed forms for components too large for an engine table."""
    return {
        name: theorems.ClosedFormValues(name)
        for name, heap in pos
        if heap > ENGINE_HEAP_LIMIT and theorems.has_closed_form(name)
    }


def cmd_verify(args, out) -> int:
    targets = [rs.name for rs in registry()] if args.all else [args.ruleset]
    if not args.all and args.ruleset is None:
        raise UsageError("verify needs a ruleset or --all")
    worst = EXIT_OK
    for name in targets:
        rs = lookup(name)
        for res in theorems.verify(rs, args.to):
            print(f"{rs.name}: {res}", file=out)
            if res.hard and not res.passed:
                worst = EXIT_MISMATCH
    return worst


def cmd_export(args, out) -> int:
    table = engine.sg_table(args.ruleset, args.to)
    data = analysis.export_sequence(table, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        out.write(data.decode("ascii"))
    return EXIT_OK


def cmd_plot(args, out) -> int:
    table = engine.sg_table(args.ruleset, args.to)
    analysis.scatter_svg(table, args.out)
    print(f"wrote {args.out} ({len(table)} points)", file=out)
    return EXIT_OK


def cmd_play(args, out, inp=None) -> int:
    inp = inp or sys.stdin
    pos = posexpr.parse(args.position)
    human = args.first == "human"
    while True:
        print(f"position: {pos}", file=out)
        moves = engine.legal_moves(pos)
        if not moves:
            print("no moves left: " + ("the computer wins" if human else "you win"), file=out)
            return EXIT_OK
        if human:
            for i, m in enumerate(moves, 1):
                print(f"  [{i}] {m}", file=out)
            move = None
            while move is None:
                print("your move: ", end="", file=out, flush=True)
                line = inp.readline()
                if not line:
                    print("\ninput closed", file=out)
                    return EXIT_USAGE
                try:
                    move = moves[int(line) - 1] if int(line) >= 1 else None
                except (ValueError, IndexError):
                    move = None
                if move is None:
                    print(f"enter a number from 1 to {len(moves)}", file=out)
        else:
            win = engine.winning_moves(pos, first_only=True)
            move = win[0] if win else moves[0]
            print(f"computer plays {move}", file=out)
        pos = move.apply(pos)
        human = not human


def cmd_list(args, out) -> int:
    for rs in registry():
        cov, note = theorems.coverage(rs)
        extra = f" ({note})" if note else ""
        print(f"{rs.name:22} {rs.semantics.value:20} n>={rs.domain_min}  closed form: {cov.value}{extra}", file=out)
    print(f"{'sub{s1,s2,...}':22} {'singleton subtract':20} n>=1  subtraction game with sink 1", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arithgames", description="Nim-values of arithmetic heap games.")
    p.add_argument("--max-memory", type=int, default=None, metavar="MB",
                   help="bound on the factor sieve size in megabytes")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sg", help="nim-value of one heap, with its options")
    s.add_argument("ruleset")
    s.add_argument("n", type=int)
    s.add_argument("--closed-form", action="store_true")
    s.set_defaults(func=cmd_sg)

    s = sub.add_parser("seq", help="nim-value sequence from the smallest heap")
    s.add_argument("ruleset")
    s.add_argument("--to", type=int, required=True)
    s.add_argument("--closed-form", action="store_true")
    s.set_defaults(func=cmd_seq)

    s = sub.add_parser("solve", help="value and winning moves of a sum, e.g. '7@totient + 7@totative'")
    s.add_argument("position")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="engine against closed forms and claims")
    s.add_argument("ruleset", nargs="?")
    s.add_argument("--to", type=int, required=True)
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export", help="write a sequence as csv, b-file or json lines")
    s.add_argument("ruleset")
    s.add_argument("--to", type=int, required=True)
    s.add_argument("--format", choices=analysis.FORMATS, default="bfile")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("plot", help="scatter plot of a sequence as SVG")
    s.add_argument("ruleset")
    s.add_argument("--to", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("play", help="play a sum against the engine")
    s.add_argument("position")
    s.add_argument("--first", choices=("human", "computer"), default="human")
    s.set_defaults(func=cmd_play)

    s = sub.add_parser("list", help="registered rulesets")
    s.set_defaults(func=cmd_list)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.max_memory is not None:
        arith.set_max_limit(max(2, args.max_memory * 1_000_000 // 8))
    try:
        return args.func(args, out)
    except PositionSyntaxError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except (PartialTableError, CapacityError, TableLimitError, OracleRefusal, MemoryError) as e:
        print(f"resource error: {e}", file=err)
        return EXIT_RESOURCE
    except (UnknownRulesetError, DomainError, UsageError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except GameError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
