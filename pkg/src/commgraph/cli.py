"""Command-line entry point.

Exit codes: 0 success, 2 parse error, 3 enumeration budget exceeded,
4 precondition violated (e.g. a graph with a star vertex), 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as C
from .graphs import GraphFormatError, commuting_graph, parse_graph
from .knit import shortest_left_path
from .report import semigroup_report
from .verify import SUITES, run_suite
from .wordcore import BudgetExceeded, EnumerationBudget, PresentationError, enumerate_semigroup, parse_presentation

EXIT_PARSE, EXIT_BUDGET, EXIT_PRECONDITION, EXIT_VERIFY = 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _load(args):
    try:
        p = parse_presentation(_read(args.file))
    except PresentationError as exc:
        raise CliError(f"{args.file}: {exc}", EXIT_PARSE) from None
    budget = EnumerationBudget(max_word_length=args.max_len, max_classes=args.max_classes)
    try:
        s, table = enumerate_semigroup(p, budget)
    except BudgetExceeded as exc:
        raise CliError(f"BudgetExceeded: {exc}", EXIT_BUDGET) from None
    return p, s, table


def cmd_enumerate(args) -> int:
    _, s, table = _load(args)
    if args.json:
        out = s.to_json()
        out["order"] = s.order
        out["working_length"] = table.working_length
        print(_dump(out))
        return 0
    print(f"order: {s.order}")
    print("elements: " + " ".join(s.elements))
    print("generators: " + " ".join(s.elements[g] for g in s.generators))
    if args.table:
        width = max(len(e) for e in s.elements)
        print(" " * width + " | " + " ".join(e.rjust(width) for e in s.elements))
        for x, row in enumerate(s.table):
            print(s.elements[x].rjust(width) + " | " + " ".join(s.elements[y].rjust(width) for y in row))
    return 0


def cmd_analyze(args) -> int:
    _, s, _ = _load(args)
    report = semigroup_report(s)
    if args.dot:
        Path(args.dot).write_text(commuting_graph(s).to_dot("Gamma"), encoding="utf-8")
    data = report.to_json()
    if args.json:
        print(_dump(data))
    else:
        for key, value in data.items():
            print(f"{key}: {json.dumps(value)}")
    return 0


def cmd_knit(args) -> int:
    _, s, _ = _load(args)
    path = shortest_left_path(s)
    names = None if path is None else path.names(s)
    if args.json:
        print(_dump({"knit_degree": None if path is None else path.length, "witness": names}))
    elif path is None:
        print("knit degree: none (no left path)")
    else:
        print(f"knit degree: {path.length}")
        print("witness: " + " - ".join(names))
    return 0


def cmd_realize(args) -> int:
    try:
        g = parse_graph(_read(args.graph_file))
    except GraphFormatError as exc:
        raise CliError(f"{args.graph_file}: {exc}", EXIT_PARSE) from None
    try:
        p = C.realize_graph(g, C.Variant(args.variant))
    except C.NotStarFree as exc:
        raise CliError(f"NotStarFree: {exc}", EXIT_PRECONDITION) from None
    except (ValueError, PresentationError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    text = p.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    result = run_suite(args.suite, n_max=args.n_max, samples=args.samples, seed=args.seed)
    print(_dump(result.to_json(timing=args.timing)))
    print(f"{result.suite}: {result.passed}/{result.run} passed in {result.wall_time:.2f}s", file=sys.stderr)
    return 0 if result.ok else EXIT_VERIFY


def cmd_explore(args) -> int:
    try:
        filters = [C.parse_filter(f) for f in args.filter]
    except (ValueError, AttributeError) as exc:
        raise CliError(f"bad filter: {exc}", EXIT_PARSE) from None
    stats = C.ExploreStats()
    budget = EnumerationBudget(max_word_length=args.cert_len, max_classes=args.max_classes)
    for p, _, report in C.explore(
        args.gens,
        args.max_len,
        args.budget,
        seed=args.seed or 0,
        filters=filters,
        exhaustive=not args.sample,
        enum_budget=budget,
        stats=stats,
    ):
        print(_dump({"presentation": p.encode(), "report": report.to_json()}), flush=True)
    print(_dump({"summary": stats.to_json()}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--max-classes", type=int, default=1_000_000, help="largest semigroup accepted")
    enum_flags = argparse.ArgumentParser(add_help=False, parents=[common])
    enum_flags.add_argument("--max-len", type=int, default=8, help="longest word tried for the finiteness certificate")

    parser = argparse.ArgumentParser(prog="commgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[enum_flags], help="enumerate the semigroup of a presentation file")
    p.add_argument("file")
    p.add_argument("--table", action="store_true", help="print the Cayley table")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("analyze", parents=[enum_flags], help="invariants of the commuting graph")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH", help="write the commuting graph as DOT")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("knit", parents=[enum_flags], help="knit degree and a shortest left path")
    p.add_argument("file")
    p.set_defaults(func=cmd_knit)

    p = sub.add_parser("realize", parents=[enum_flags], help="presentation whose commuting graph is the input graph")
    p.add_argument("graph_file")
    p.add_argument("--variant", choices=[v.value for v in C.Variant], default="equational")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", parents=[enum_flags], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON result")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", parents=[common], help="search small monomial presentations (JSON lines)")
    p.add_argument("--gens", type=int, default=2)
    p.add_argument("--max-len", type=int, default=3, help="longest relation word")
    p.add_argument("--cert-len", type=int, default=8, help="longest word tried for the finiteness certificate")
    p.add_argument("--budget", type=int, default=100, help="number of certified presentations to analyze")
    p.add_argument("--filter", action="append", default=[], help="e.g. girth>=4, connected, rank<=2")
    p.add_argument("--sample", action="store_true", help="seeded random draws instead of exhaustive order")
    p.set_defaults(func=cmd_explore, max_classes=2000)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
