"""Canonical basis words, exact growth counting, and growth-degree estimation.

A word is a basis word when it is a single vertex, a path, a reversed star
path, or a product p q* of two paths ending at the same vertex whose last
edges are not both equal to the special edge of their source.  The growth
function g(n) counts basis words of length at most n; it equals the
dimension of the span of all products of at most n generators.

Counting is exact and never materializes words: paths are counted by
(length, last edge) with a dynamic program, star paths mirror paths, and
the p q* family is a convolution of end-vertex path counts minus the
excluded special pairs, indexed by last edge.  All arithmetic is
arbitrary-precision.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from statistics import linear_regression
from typing import Iterator

from . import rewrite
from .errors import BudgetError
from .graph import Graph, find_cycles
from .ordering import GenKind, Monomial, build_order, edge, star, vertex

#: Flag value returned by estimate_gk when growth is super-polynomial.
EXPONENTIAL = math.inf

DEFAULT_BUDGET = 10_000_000


def _resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    raw = os.environ.get("LPA_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class GrowthSequence:
    """Exact values g(1), ..., g(N) of the growth function."""

    counts: tuple[int, ...]

    def g(self, n: int) -> int:
        if not 1 <= n <= len(self.counts):
            raise ValueError(f"g({n}) outside the computed range 1..{len(self.counts)}")
        return self.counts[n - 1]

    @property
    def max_n(self) -> int:
        return len(self.counts)

    def rows(self) -> Iterator[tuple[int, int]]:
        for i, c in enumerate(self.counts, start=1):
            yield i, c


@dataclass(frozen=True)
class FreeWitness:
    """Two full-cycle words based at a shared vertex of two distinct cycles.

    Words in the two letters p and q are pairwise distinct paths, so p and q
    generate a free subalgebra; their existence certifies exponential growth.
    """

    p: Monomial
    q: Monomial
    shared_vertex: str


def is_basis_word(m: Monomial, g: Graph) -> bool:
    """Decide membership in the canonical basis, structurally.

    This check is independent of the rewriting engine: it verifies the
    path/star-path shape directly, including the last-edge condition on
    p q* products ("distinct, or equal but not special").
    """
    if len(m) == 0:
        return False
    edge_map = g.edge_map
    for x in m:
        if x.kind == GenKind.VERTEX:
            if len(m) > 1 or x.name not in g.vertex_index:
                return False
        elif x.name not in edge_map:
            return False
    if len(m) == 1:
        return True

    split = 0
    while split < len(m) and m[split].kind == GenKind.EDGE:
        split += 1
    if any(x.kind != GenKind.STAR for x in m[split:]):
        return False

    p_edges = [edge_map[x.name] for x in m[:split]]
    q_edges = [edge_map[x.name] for x in reversed(m[split:])]
    for seq in (p_edges, q_edges):
        if any(seq[i].dst != seq[i + 1].src for i in range(len(seq) - 1)):
            return False
    if p_edges and q_edges:
        last_p, last_q = p_edges[-1], q_edges[-1]
        if last_p.dst != last_q.dst:
            return False
        if last_p.name == last_q.name and g.special.get(last_p.src) == last_p.name:
            return False
    return True


def _path_layers(g: Graph, N: int) -> list[list[int]]:
    """layers[l-1][j] = number of paths of length l ending with edge j."""
    edges = g.edges
    ne = len(edges)
    preds = [
        [i for i in range(ne) if edges[i].dst == edges[j].src] for j in range(ne)
    ]
    cur = [1] * ne
    layers = [cur]
    for _ in range(N - 1):
        prev = cur
        cur = [sum(prev[i] for i in preds[j]) for j in range(ne)]
        layers.append(cur)
    return layers


def _accumulate_self_convolution(acc: list[int], seq: list[int], sign: int) -> None:
    """acc[l] += sign * sum(seq[a-1] * seq[b-1] for a + b == l, a, b >= 1)."""
    N = len(seq)
    for a in range(1, N + 1):
        va = seq[a - 1]
        if not va:
            continue
        for b in range(a + 1, N - a + 1):
            vb = seq[b - 1]
            if vb:
                acc[a + b] += sign * 2 * va * vb
        if 2 * a <= N:
            acc[2 * a] += sign * va * va


def growth_sequence(g: Graph, N: int) -> GrowthSequence:
    """Exact growth values g(1), ..., g(N).

    g(n) = |V| + 2 * (paths of length <= n) + (p q* products of total length
    <= n, excluding pairs whose last edges coincide and are special).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    ne = len(g.edges)
    nv = len(g.vertices)
    if ne == 0:
        return GrowthSequence((nv,) * N)

    layers = _path_layers(g, N)
    paths_exact = [sum(layer) for layer in layers]

    pq_exact = [0] * (N + 1)
    by_end: dict[str, list[int]] = {}
    for j, e in enumerate(g.edges):
        by_end.setdefault(e.dst, []).append(j)
    for w, idxs in by_end.items():
        seq = [sum(layer[j] for j in idxs) for layer in layers]
        _accumulate_self_convolution(pq_exact, seq, 1)
    for v in g.vertices:
        sp = g.special.get(v)
        if sp is None:
            continue
        j = next(i for i, e in enumerate(g.edges) if e.name == sp)
        seq = [layer[j] for layer in layers]
        _accumulate_self_convolution(pq_exact, seq, -1)

    counts = []
    total_paths = 0
    total_pq = 0
    for n in range(1, N + 1):
        total_paths += paths_exact[n - 1]
        total_pq += pq_exact[n]
        counts.append(nv + 2 * total_paths + total_pq)
    assert counts[0] == nv + 2 * ne
    return GrowthSequence(tuple(counts))


def basis_words(g: Graph, N: int, budget: int | None = None) -> list[Monomial]:
    """Materialize every basis word of length <= N, in length-lex order.

    Guarded: raises BudgetError when the exact count (computed first, which
    is cheap) exceeds the word budget.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    budget = _resolve_budget(budget)
    total = growth_sequence(g, N).g(N)
    if total > budget:
        raise BudgetError(
            f"{total} basis words of length <= {N} exceed the budget of {budget}"
        )

    # Paths by length, grouped by end vertex for the p q* assembly.
    paths: list[list[tuple[str, ...]]] = [[]]
    paths.append([(e.name,) for e in g.edges])
    for length in range(2, N + 1):
        layer = []
        for p in paths[length - 1]:
            tail = g.edge_map[p[-1]].dst
            for e in g.out_edges[tail]:
                layer.append(p + (e.name,))
        paths.append(layer)

    words: list[Monomial] = [(vertex(v),) for v in g.vertices]
    for length in range(1, N + 1):
        for p in paths[length]:
            words.append(tuple(edge(n) for n in p))
            words.append(tuple(star(n) for n in reversed(p)))

    by_end: dict[str, list[tuple[str, ...]]] = {}
    for length in range(1, N):
        for p in paths[length]:
            by_end.setdefault(g.edge_map[p[-1]].dst, []).append(p)
    for group in by_end.values():
        for p in group:
            for q in group:
                if len(p) + len(q) > N:
                    continue
                last_p, last_q = p[-1], q[-1]
                if last_p == last_q and g.special.get(g.edge_map[last_p].src) == last_p:
                    continue
                words.append(
                    tuple(edge(n) for n in p) + tuple(star(n) for n in reversed(q))
                )

    ctx = build_order(g)
    words.sort(key=ctx.key)
    assert len(words) == total
    return words


def dim_oracle(g: Graph, n: int, budget: int | None = None) -> int:
    """Brute-force dimension of the span of all products of <= n generators.

    Independent of the counting in growth_sequence: walks every word over
    the alphabet (pruning extensions of words that rewrite to zero, which
    cannot contribute), reduces it, and counts the distinct monomials
    appearing in the normal forms.  Each normal form is asserted to be an
    integer combination of basis words.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    budget = _resolve_budget(budget)
    alphabet_size = len(g.vertices) + 2 * len(g.edges)
    nominal = sum(alphabet_size**k for k in range(1, n + 1))
    if nominal > budget:
        raise BudgetError(
            f"enumerating {nominal} words of length <= {n} exceeds the budget of {budget}"
        )
    ctx = build_order(g)
    rs = rewrite.build_rules(g, ctx)
    alphabet = ctx.alphabet
    support: set[Monomial] = set()

    def extend(prefix_nf: rewrite.Element, remaining: int) -> None:
        for x in alphabet:
            nf = rewrite.reduce(
                {m + (x,): c for m, c in prefix_nf.items()}, rs
            )
            if not nf:
                continue
            assert all(
                isinstance(c, int) or c.denominator == 1 for c in nf.values()
            ), "normal form of a word must have integer coefficients"
            assert all(is_basis_word(m, g) for m in nf), (
                "normal form of a word must be supported on basis words"
            )
            support.update(nf)
            if remaining > 1:
                extend(nf, remaining - 1)

    extend({(): 1}, n)
    return len(support)


def estimate_gk(
    seq: GrowthSequence, exponential_slope: float = 0.05
) -> float:
    """Estimate the growth degree from the top half of a growth sequence.

    Returns EXPONENTIAL (infinity) when log g(n) grows linearly in n, i.e.
    the least-squares slope of log g(n) against n over n in [N/2, N] exceeds
    ``exponential_slope``; otherwise returns the least-squares slope of
    log g(n) against log n over the same window.
    """
    N = seq.max_n
    if N < 16:
        raise ValueError("estimate_gk needs a sequence of length at least 16")
    window = range(N // 2, N + 1)
    values = [seq.g(n) for n in window]
    if any(v <= 0 for v in values):
        raise ValueError("growth sequence is degenerate (zero values)")
    logs = [math.log(v) for v in values]
    ns = [float(n) for n in window]
    if logs[0] == logs[-1]:
        return 0.0
    if linear_regression(ns, logs).slope > exponential_slope:
        return EXPONENTIAL
    return linear_regression([math.log(n) for n in ns], logs).slope


def free_witness(g: Graph) -> FreeWitness | None:
    """Find two distinct cycles sharing a vertex, as full-cycle words.

    Returns the two base paths rooted at the first shared vertex (in
    declaration order), or None when all cycles are pairwise disjoint.
    """
    cycles = find_cycles(g)
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            shared = set(cycles[i].vertices) & set(cycles[j].vertices)
            if not shared:
                continue
            v = min(shared, key=g.vertex_index.__getitem__)
            p = cycles[i].base_paths[cycles[i].vertices.index(v)]
            q = cycles[j].base_paths[cycles[j].vertices.index(v)]
            return FreeWitness(
                p=tuple(edge(n) for n in p),
                q=tuple(edge(n) for n in q),
                shared_vertex=v,
            )
    return None
