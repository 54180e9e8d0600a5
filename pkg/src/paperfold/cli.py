"""Command line front end: ``paperfold <command> [options]``.

Exit status: 0 on success, 1 on a failed check or a resource cap, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import recursion as rec
from .census import Census
from .creases import decorate, fold_structure
from .errors import PaperfoldError
from .render import render, write_atomic
from .substitution import LETTERS, PHI, S, supertile
from .verify import FAIL, Budget, format_table, reports_to_json, verify_all


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _budget(text: str) -> Budget:
    try:
        return Budget.parse(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paperfold", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("supertile", help="print mu^k(letter), optionally mapped by phi")
    s.add_argument("--letter", required=True, choices=list(LETTERS["A16"]))
    s.add_argument("--level", required=True, type=_nonneg)
    s.add_argument("--alphabet", choices=["a16", "b4"], default="a16")
    s.add_argument("--format", choices=["json", "text"], default="text")
    s.add_argument("--out")

    s = sub.add_parser("count", help="number of distinct rows x cols patterns")
    s.add_argument("--rows", required=True, type=_positive)
    s.add_argument("--cols", required=True, type=_positive)
    s.add_argument("--structure", choices=["T", "S"], default="T")
    s.add_argument("--list", action="store_true", help="also print every pattern")

    s = sub.add_parser("census", help="class counts as CSV")
    s.add_argument("--n-max", required=True, type=_positive)
    s.add_argument("--brute-max", type=_nonneg, default=10,
                   help="use brute force up to this n, the recursion beyond (default 10)")
    s.add_argument("--out")

    s = sub.add_parser("verify", help="run every check")
    s.add_argument("--budget", type=_budget, default=Budget(),
                   help="comma separated overrides, e.g. max_square=8,max_depth=10")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("render", help="draw a crease field")
    s.add_argument("--which", choices=["S", "fold"], required=True)
    s.add_argument("--level", required=True, type=_nonneg)
    s.add_argument("--format", choices=["svg", "ascii"], default="svg")
    s.add_argument("--out")

    s = sub.add_parser("table", help="the initial values for n = 1..10 as CSV")
    s.add_argument("--source", choices=["bruteforce", "seed"], default="bruteforce")

    s = sub.add_parser("sequence", help="'n A_n' lines")
    s.add_argument("--n-max", required=True, type=_positive)
    s.add_argument("--method", choices=["closed", "recursive", "brute"], default="closed")
    s.add_argument("--no-crosscheck", action="store_true")
    s.add_argument("--out")
    return p


def _emit(data: str | bytes, out: str | None):
    if out:
        write_atomic(out, data)
    elif isinstance(data, bytes):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        sys.stdout.write(data)


def cmd_supertile(args) -> int:
    grid = supertile(args.letter, args.level)
    if args.alphabet == "b4":
        grid = PHI(grid)
    text = grid.to_json() + "\n" if args.format == "json" else grid.to_text() + "\n"
    _emit(text, args.out)
    return 0


def cmd_count(args) -> int:
    census = Census()
    if args.structure == "T":
        res = census.pattern_set_T(args.rows, args.cols)
    else:
        res = census.pattern_set_S(args.rows, args.cols)
    print(f"{res.cardinality} (plateau at {args.structure}_{res.plateau_level})")
    if args.list:
        sys.stdout.write(res.patterns.to_text())
    return 0


def cmd_census(args) -> int:
    table = rec.census_table(args.n_max, brute_max=min(args.brute_max, args.n_max))
    _emit(table.to_csv(), args.out)
    return 0


def cmd_verify(args) -> int:
    reports = verify_all(args.budget)
    sys.stdout.write(reports_to_json(reports) + "\n" if args.json else format_table(reports))
    return 1 if any(r.status == FAIL for r in reports) else 0


def cmd_render(args) -> int:
    if args.which == "S":
        if args.level < 1:
            print("paperfold: render --which S needs --level >= 1", file=sys.stderr)
            return 2
        field = decorate(S(args.level))
    else:
        field = fold_structure(args.level)
    _emit(render(field, args.format), args.out)
    return 0


def cmd_table(args) -> int:
    if args.source == "seed":
        table = rec.seed_table()
    else:
        table = rec.census_table(rec.SEED_MAX, brute_max=rec.SEED_MAX)
    sys.stdout.write(table.to_csv())
    return 0


def cmd_sequence(args) -> int:
    n_max = args.n_max
    if args.method == "closed":
        values = [rec.A_closed(n) for n in range(1, n_max + 1)]
        if not args.no_crosscheck:
            rng = random.Random(n_max)
            for n in sorted(rng.choices(range(1, n_max + 1), k=32)):
                if rec.A_recursive(n) != values[n - 1]:
                    print(f"crosscheck failed at n={n}", file=sys.stderr)
                    return 1
    elif args.method == "recursive":
        values = rec.A_recursive_table(n_max)[1:]
    else:
        census = Census()
        values = [census.A(n) for n in range(1, n_max + 1)]
    _emit("".join(f"{n} {v}\n" for n, v in enumerate(values, start=1)), args.out)
    return 0


COMMANDS = {
    "supertile": cmd_supertile,
    "count": cmd_count,
    "census": cmd_census,
    "verify": cmd_verify,
    "render": cmd_render,
    "table": cmd_table,
    "sequence": cmd_sequence,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (PaperfoldError, OverflowError) as exc:
        print(f"paperfold: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
