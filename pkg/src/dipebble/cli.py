"""Command-line interface.

Exit codes: 0 success, 1 theorem violation or unexpected unsolvability,
2 input error, 3 solver budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import (
    THEOREMS,
    CensusError,
    CensusFilter,
    run_census,
    verify_theorem,
    write_family_f,
)
from .constructions import build_layered, build_mixed2
from .digraph import Digraph, DigraphError, parse_digraph, serialize_digraph
from .family_f import FamilyFLabeling, check_family_f, verify_f_propositions
from .pebbling import (
    BudgetExceeded,
    NotStronglyConnected,
    PebblingClass,
    is_solvable,
    pebbling_number,
    pebbling_number_rooted,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def parse_config(text: str, n: int) -> tuple[int, ...]:
    """Parse ``[0,3,0]`` or the shorthand ``1:3,2:1`` (unmentioned vertices get 0)."""
    text = text.strip()
    if text.startswith("["):
        values = json.loads(text)
        if not isinstance(values, list) or not all(isinstance(x, int) and x >= 0 for x in values):
            raise ValueError("configuration must be a list of non-negative integers")
        if len(values) != n:
            raise ValueError(f"configuration has {len(values)} entries, graph has {n} vertices")
        return tuple(values)
    counts = [0] * n
    for item in filter(None, text.split(",")):
        vertex, _, amount = item.partition(":")
        v, c = int(vertex), int(amount)
        if not 0 <= v < n or c < 0:
            raise ValueError(f"bad configuration entry {item!r}")
        counts[v] += c
    return tuple(counts)


def _read_graph(path: str) -> Digraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_digraph(text)


def _emit(data) -> None:
    print(json.dumps(data, indent=2))


def cmd_solve(args) -> int:
    graph = _read_graph(args.graph)
    config = parse_config(args.config, graph.n)
    result = is_solvable(graph, config, args.root)
    _emit({"solvable": result.solvable, "witness": [list(m) for m in result.witness]})
    if args.expect_solvable and not result.solvable:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_number(args) -> int:
    graph = _read_graph(args.graph)
    if args.root is not None:
        _emit({"root": args.root, "rooted_pi": pebbling_number_rooted(graph, args.root)})
        return EXIT_OK
    result = pebbling_number(graph, workers=args.workers)
    _emit({
        "pi": result.pi,
        "per_root": [
            {"root": r.root, "rooted_pi": r.rooted_pi, "max_unsolvable": list(r.max_unsolvable_witness)}
            for r in result.per_root
        ],
    })
    return EXIT_OK


def cmd_classify(args) -> int:
    graph = _read_graph(args.graph)
    result = pebbling_number(graph)
    print(PebblingClass(result.pi - graph.n))
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.kind == "mixed2":
        built = build_mixed2(args.k)
    else:
        if args.d is None:
            raise ValueError("construct layered needs --d")
        built = build_layered(args.d, args.k)
    out = Path(args.out)
    out.write_text(serialize_digraph(built.graph), encoding="utf-8")
    sidecar = out.with_suffix(".sidecar.json")
    sidecar.write_text(json.dumps(built.sidecar()) + "\n", encoding="utf-8")
    print(f"wrote {out} and {sidecar}")
    return EXIT_OK


def cmd_family_f(args) -> int:
    if args.action == "check":
        if not args.graph or not args.labels:
            raise ValueError("family-f check needs --graph and --labels")
        graph = _read_graph(args.graph)
        lab = FamilyFLabeling.parse(args.labels)
        report = check_family_f(graph, lab)
        data = report.as_dict()
        if report.member:
            h = report.h_sets
            data["h_sets"] = {k: sorted(getattr(h, k)) for k in ("h_a", "h_b", "h_c", "h_ab")}
            data["propositions"] = {p.name: p.passed for p in verify_f_propositions(graph, lab)}
        _emit(data)
        return EXIT_OK
    if args.n is None or not args.out:
        raise ValueError("family-f search needs --n and --out")
    count = write_family_f(args.n, args.out, args.limit)
    exhaustive = args.limit is None or count < args.limit
    print(f"{count} member classes on {args.n} vertices"
          + (" (exhaustive)" if exhaustive else " (stopped at limit)"))
    return EXIT_OK


def cmd_census(args) -> int:
    filters = CensusFilter.parse(args.filter)
    count = run_census(
        args.n, args.oriented, filters, args.out,
        workers=args.workers, long_running=args.long_running,
    )
    print(f"wrote {count} records to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_theorem(args.records, args.theorem, time_budget=args.time_budget)
    _emit(report.as_dict())
    budget_hit = any("budget-exceeded" in v["detail"] for v in report.violations)
    if budget_hit:
        return EXIT_BUDGET
    return EXIT_OK if report.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dipebble", description="Exact pebbling on directed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide solvability of a configuration")
    p.add_argument("--graph", required=True)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--config", required=True, help="[c0,c1,...] or v:count,v:count")
    p.add_argument("--expect-solvable", action="store_true", help="exit 1 when unsolvable")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("number", help="pebbling number with per-root table")
    p.add_argument("--graph", required=True)
    p.add_argument("--root", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("classify", help="Class0, Class1 or Above(k)")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="write an extremal construction")
    p.add_argument("kind", choices=("mixed2", "layered"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("family-f", help="check or search the family F")
    p.add_argument("action", choices=("check", "search"))
    p.add_argument("--graph")
    p.add_argument("--labels", help="p,q,a,b,c,r")
    p.add_argument("--n", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family_f)

    p = sub.add_parser("census", help="exhaustive census of small digraphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--filter", help="strongly-connected,diameter=K,connectivity>=K")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--long-running", action="store_true", help="allow oriented n=7")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check a theorem over census records")
    p.add_argument("--records", required=True)
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--time-budget", type=float, help="seconds per graph for thm_two3no2")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DigraphError, NotStronglyConnected, CensusError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
