"""Command-line front end.

Subcommands: analyze, growth, reduce, basis, check, witness.  All output is
deterministic for a given input file and flags.  Growth sequences are cached
under a content digest of the graph file plus the effective special-edge
map (directory from LPA_CACHE_DIR, default ~/.cache/leavitt).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .classify import GrowthKind, classify
from .errors import LeavittError
from .expressions import format_element, format_monomial, parse_expression
from .graph import Graph, chain_stats, cycles_pairwise_disjoint, find_cycles, parse_graph
from .growth import (
    GrowthSequence,
    basis_words,
    estimate_gk,
    free_witness,
    growth_sequence,
)
from .ordering import build_order
from .rewrite import build_rules, check_confluence, reduce


def _load_graph(path: str) -> tuple[Graph, bytes]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise LeavittError(f"cannot read graph file {path!r}: {exc}") from exc
    return parse_graph(data.decode("utf-8")), data


def _cache_dir() -> Path:
    override = os.environ.get("LPA_CACHE_DIR")
    if override:
        return Path(override)
    return Path.home() / ".cache" / "leavitt"


def _cached_growth(file_bytes: bytes, g: Graph, n: int) -> GrowthSequence:
    gamma = json.dumps(sorted(g.special.items()))
    digest = hashlib.sha256(file_bytes + b"\0" + gamma.encode()).hexdigest()
    cache_file = _cache_dir() / f"{digest}.json"
    try:
        cached = json.loads(cache_file.read_text())
        counts = cached["counts"]
        if isinstance(counts, list) and len(counts) >= n:
            return GrowthSequence(tuple(counts[:n]))
    except (OSError, ValueError, KeyError):
        pass
    seq = growth_sequence(g, n)
    try:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        cache_file.write_text(json.dumps({"counts": list(seq.counts)}))
    except OSError:
        pass  # caching is best-effort
    return seq


def _estimate_field(value: float) -> Any:
    return "Exponential" if math.isinf(value) else round(value, 4)


def analysis_report(g: Graph, growth_n: int | None = None) -> dict[str, Any]:
    """Assemble the full analysis of one graph as a JSON-ready mapping."""
    cycles = find_cycles(g)
    disjoint = cycles_pairwise_disjoint(g)
    verdict = classify(g)
    report: dict[str, Any] = {
        "graph": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "sinks": list(g.sinks),
        },
        "special": dict(sorted(g.special.items())),
        "cycles": [
            {"vertices": list(c.vertices), "edges": list(c.edges)} for c in cycles
        ],
        "cycles_pairwise_disjoint": disjoint,
    }
    if disjoint:
        stats = chain_stats(g)
        report["chain_stats"] = {
            "d1": stats.d1,
            "d2": stats.d2,
            "witness_chain_d1": [list(c.edges) for c in stats.witness_chain_d1],
            "witness_chain_d2": [list(c.edges) for c in stats.witness_chain_d2],
        }
    else:
        report["chain_stats"] = None
    if verdict.kind is GrowthKind.POLYNOMIAL:
        report["classification"] = {"kind": "Polynomial", "gk": verdict.gk}
    else:
        w = verdict.witness
        assert w is not None
        report["classification"] = {
            "kind": "Exponential",
            "witness": {
                "p": format_monomial(w.p),
                "q": format_monomial(w.q),
                "shared_vertex": w.shared_vertex,
            },
        }
    if growth_n is not None:
        seq = growth_sequence(g, growth_n)
        growth: dict[str, Any] = {
            "max_n": growth_n,
            "counts": list(seq.counts),
        }
        growth["estimated_gk"] = (
            _estimate_field(estimate_gk(seq)) if growth_n >= 16 else None
        )
        report["growth"] = growth
    confluence = check_confluence(build_rules(g, build_order(g)))
    report["confluence"] = {
        "confluent": confluence.confluent,
        "overlaps_checked": confluence.overlaps_checked,
    }
    return report


def _format_report_text(report: dict[str, Any]) -> str:
    lines = []
    graph = report["graph"]
    lines.append(
        f"graph: {graph['vertices']} vertices, {graph['edges']} edges, "
        f"sinks: {', '.join(graph['sinks']) if graph['sinks'] else '(none)'}"
    )
    special = report["special"]
    pairs = ", ".join(f"{v} -> {e}" for v, e in special.items())
    lines.append(f"special: {pairs if pairs else '(none)'}")
    lines.append(f"cycles: {len(report['cycles'])}")
    for c in report["cycles"]:
        lines.append(f"  [{', '.join(c['vertices'])}] edges: {'.'.join(c['edges'])}")
    lines.append(
        f"cycles_pairwise_disjoint: {'true' if report['cycles_pairwise_disjoint'] else 'false'}"
    )
    stats = report["chain_stats"]
    if stats is not None:
        lines.append(f"chain_stats: d1={stats['d1']} d2={stats['d2']}")
        for label in ("witness_chain_d1", "witness_chain_d2"):
            chains = " -> ".join(".".join(c) for c in stats[label]) or "(empty)"
            lines.append(f"  {label}: {chains}")
    cls = report["classification"]
    if cls["kind"] == "Polynomial":
        lines.append(f"classification: Polynomial gk={cls['gk']}")
    else:
        w = cls["witness"]
        lines.append(
            f"classification: Exponential witness p={w['p']} q={w['q']} "
            f"shared_vertex={w['shared_vertex']}"
        )
    growth = report.get("growth")
    if growth is not None:
        lines.append(f"growth (n <= {growth['max_n']}):")
        for n, count in enumerate(growth["counts"], start=1):
            lines.append(f"  {n},{count}")
        est = growth["estimated_gk"]
        lines.append(f"estimated_gk: {est if est is not None else 'n/a'}")
    conf = report["confluence"]
    lines.append(
        f"confluence: {'confluent' if conf['confluent'] else 'NOT CONFLUENT'} "
        f"({conf['overlaps_checked']} overlaps checked)"
    )
    return "\n".join(lines)


def _cmd_analyze(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args.file)
    report = analysis_report(g, growth_n=args.growth_n)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_format_report_text(report))
    return 0


def _cmd_growth(args: argparse.Namespace) -> int:
    g, raw = _load_graph(args.file)
    seq = _cached_growth(raw, g, args.max_n)
    csv_lines = ["n,g"] + [f"{n},{count}" for n, count in seq.rows()]
    if args.csv:
        Path(args.csv).write_text("\n".join(csv_lines) + "\n")
    else:
        for line in csv_lines:
            print(line)
    if seq.max_n >= 16:
        est = estimate_gk(seq)
        print(f"estimated_gk: {'Exponential' if math.isinf(est) else f'{est:.4f}'}")
    else:
        print("estimated_gk: n/a (need --max-n >= 16)")
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args.file)
    ctx = build_order(g)
    rs = build_rules(g, ctx)
    element = parse_expression(args.expr, g)
    print(format_element(reduce(element, rs), ctx))
    return 0


def _cmd_basis(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args.file)
    for word in basis_words(g, args.max_n):
        print(format_monomial(word))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args.file)
    ctx = build_order(g)
    report = check_confluence(build_rules(g, ctx))
    if report.confluent:
        print(f"confluent ({report.overlaps_checked} overlaps checked)")
        return 0
    print(f"NOT confluent: {len(report.conflicts)} unresolved overlaps")
    for conflict in report.conflicts:
        print(
            f"  {format_monomial(conflict.word)}: "
            f"{format_element(conflict.left_normal_form, ctx)} "
            f"!= {format_element(conflict.right_normal_form, ctx)}"
        )
    return 2


def _cmd_witness(args: argparse.Namespace) -> int:
    g, _ = _load_graph(args.file)
    w = free_witness(g)
    if w is None:
        print("none")
    else:
        print(
            f"p={format_monomial(w.p)} q={format_monomial(w.q)} "
            f"shared_vertex={w.shared_vertex}"
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Canonical forms, growth, and growth classification "
        "for the path algebra of a finite directed graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis report")
    p.add_argument("file")
    p.add_argument("--growth-n", type=int, default=None, metavar="N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("growth", help="growth table and degree estimate")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p.add_argument("--csv", default=None, metavar="OUT")
    p.set_defaults(handler=_cmd_growth)

    p = sub.add_parser("reduce", help="normal form of an element expression")
    p.add_argument("file")
    p.add_argument("--expr", required=True)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("basis", help="list basis words up to a length")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p.set_defaults(handler=_cmd_basis)

    p = sub.add_parser("check", help="confluence report for the rewriting system")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("witness", help="free-subalgebra witness, if any")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_witness)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Entry point: returns the exit status instead of raising SystemExit."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_n", 1) is not None and getattr(args, "max_n", 1) < 1:
        print("error: N must be at least 1", file=sys.stderr)
        return 1
    if getattr(args, "growth_n", None) is not None and args.growth_n < 1:
        print("error: N must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.handler(args)
    except LeavittError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
