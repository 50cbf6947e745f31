"""Finite directed multigraphs and their cycle/chain structure.

A graph carries named vertices, named edges with source and range maps, and
a choice of one "special" out-edge per non-sink vertex.  Cycles here are
closed edge paths whose source vertices are pairwise distinct, reported once
up to rotation.  When all cycles are pairwise vertex-disjoint, reachability
between distinct cycles is a strict partial order, and the two chain numbers
d1 (longest chain of cycles) and d2 (longest chain ending in a cycle with an
exit) determine the growth classification of the associated algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import CyclesIntersectError, GraphError


class Edge(NamedTuple):
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    """A validated finite directed multigraph with a special-edge choice.

    Invariants are enforced at construction: identifiers are unique (and a
    name may not serve as both a vertex and an edge), every edge endpoint is
    declared, and ``special`` maps exactly the non-sink vertices, each to one
    of its own out-edges.  Instances are immutable.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    special: Mapping[str, str]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        vset = seen
        enames: set[str] = set()
        for e in self.edges:
            if e.name in enames:
                raise GraphError(f"duplicate edge {e.name!r}")
            if e.name in vset:
                raise GraphError(
                    f"identifier {e.name!r} is used as both a vertex and an edge"
                )
            enames.add(e.name)
            for endpoint in (e.src, e.dst):
                if endpoint not in vset:
                    raise GraphError(
                        f"edge {e.name!r} references undeclared vertex {endpoint!r}"
                    )
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e.name)
        for v, ename in self.special.items():
            if v not in vset:
                raise GraphError(f"special block references undeclared vertex {v!r}")
            if ename not in enames:
                raise GraphError(f"special block references undeclared edge {ename!r}")
            if not out[v]:
                raise GraphError(f"special edge declared for sink {v!r}")
            if ename not in out[v]:
                raise GraphError(
                    f"special edge {ename!r} for vertex {v!r} does not start at {v!r}"
                )
        for v in self.vertices:
            if out[v] and v not in self.special:
                raise GraphError(f"non-sink vertex {v!r} has no special edge")

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self.out_edges[v])

    def is_sink(self, v: str) -> bool:
        return not self.out_edges[v]


def make_graph(
    vertices: Iterable[str],
    edges: Iterable[tuple[str, str, str]],
    special: Mapping[str, str] | None = None,
) -> Graph:
    """Build a validated Graph, filling in default special edges.

    ``edges`` are (name, source, range) triples.  A non-sink vertex missing
    from ``special`` gets its last-declared out-edge as the special one.
    """
    vs = tuple(vertices)
    es = tuple(Edge(*t) for t in edges)
    # Default rule: the last-declared out-edge wins when no explicit choice.
    chosen: dict[str, str] = {}
    for e in es:
        chosen[e.src] = e.name
    if special:
        chosen.update(special)
    return Graph(vertices=vs, edges=es, special=chosen)


def parse_graph(text: str) -> Graph:
    """Parse the JSON graph document format into a validated Graph.

    The document holds ``vertices`` (list of names), ``edges`` (list of
    objects with ``id``, ``src``, ``dst``), and an optional ``special``
    object mapping vertex names to edge names.
    """
    import json

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    try:
        raw_vertices = doc["vertices"]
        raw_edges = doc["edges"]
    except KeyError as exc:
        raise GraphError(f"graph document is missing the {exc.args[0]!r} key") from exc
    if not isinstance(raw_vertices, list) or not all(
        isinstance(v, str) for v in raw_vertices
    ):
        raise GraphError("'vertices' must be a list of strings")
    if not isinstance(raw_edges, list):
        raise GraphError("'edges' must be a list")
    edges = []
    for item in raw_edges:
        if not isinstance(item, dict):
            raise GraphError("each edge must be an object with id, src, dst")
        try:
            name, src, dst = item["id"], item["src"], item["dst"]
        except KeyError as exc:
            raise GraphError(f"edge entry is missing the {exc.args[0]!r} key") from exc
        if not all(isinstance(x, str) for x in (name, src, dst)):
            raise GraphError(f"edge entry {item!r} must have string fields")
        edges.append((name, src, dst))
    special = doc.get("special")
    if special is not None:
        if not isinstance(special, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in special.items()
        ):
            raise GraphError("'special' must map vertex names to edge names")
    return make_graph(raw_vertices, edges, special)


@dataclass(frozen=True)
class Cycle:
    """A cycle: a closed edge path visiting pairwise-distinct vertices.

    ``vertices[k]`` is the source of ``edges[k]``; the cycle is stored in its
    canonical rotation, starting at the smallest vertex in declaration order.
    ``base_paths[k]`` is the rotation of the edge word starting at
    ``vertices[k]``, so there is one base path per vertex of the cycle.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.vertices or len(self.vertices) != len(self.edges):
            raise GraphError("cycle needs one edge per vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("cycle vertices must be distinct")

    @property
    def length(self) -> int:
        return len(self.vertices)

    @cached_property
    def base_paths(self) -> tuple[tuple[str, ...], ...]:
        e = self.edges
        return tuple(e[k:] + e[:k] for k in range(len(e)))


def _scc_ids(g: Graph) -> dict[str, int]:
    """Tarjan strongly connected components; returns a component id per vertex."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    ids: dict[str, int] = {}
    counter = [0]
    comp = [0]

    def strong(v: str) -> None:
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for e in g.out_edges[v]:
            w = e.dst
            if w not in index:
                strong(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            while True:
                w = stack.pop()
                on_stack.discard(w)
                ids[w] = comp[0]
                if w == v:
                    break
            comp[0] += 1

    for v in g.vertices:
        if v not in index:
            strong(v)
    return ids


def find_cycles(g: Graph) -> tuple[Cycle, ...]:
    """Enumerate the cycles of ``g``, one per rotation class.

    Every cycle lies inside one strongly connected component, so the search
    walks each component separately: for each start vertex, a DFS follows
    edges within the component, never revisiting a vertex and never touching
    a vertex declared earlier than the start.  Each cycle is therefore found
    exactly once, rotated to start at its smallest vertex.
    """
    scc = _scc_ids(g)
    idx = g.vertex_index
    cycles: list[Cycle] = []

    for start in g.vertices:
        start_idx = idx[start]
        home = scc[start]
        path: list[Edge] = []
        visited = {start}

        def walk(v: str) -> None:
            for e in g.out_edges[v]:
                w = e.dst
                if scc[w] != home or idx[w] < start_idx:
                    continue
                if w == start:
                    closed = path + [e]
                    cycles.append(
                        Cycle(
                            vertices=tuple(f.src for f in closed),
                            edges=tuple(f.name for f in closed),
                        )
                    )
                elif w not in visited:
                    path.append(e)
                    visited.add(w)
                    walk(w)
                    visited.discard(w)
                    path.pop()

        walk(start)
    return tuple(cycles)


def cycles_pairwise_disjoint(g: Graph) -> bool:
    """True iff no vertex belongs to two distinct cycles."""
    seen: set[str] = set()
    for c in find_cycles(g):
        for v in c.vertices:
            if v in seen:
                return False
        seen.update(c.vertices)
    return True


def has_exit(c: Cycle, g: Graph) -> bool:
    """True iff some edge leaves a vertex of ``c`` without belonging to ``c``."""
    own = set(c.edges)
    return any(
        e.name not in own for v in c.vertices for e in g.out_edges[v]
    )


@dataclass(frozen=True)
class ChainStats:
    """Longest-chain statistics over the cycle reachability order.

    ``d1`` is the length of the longest sequence of distinct cycles each
    reaching the next through some path; ``d2`` restricts to sequences whose
    final cycle has an exit.  Witness chains realize the two maxima (the d2
    witness is empty when no cycle has an exit).  Both are 0 on acyclic
    graphs.
    """

    d1: int
    d2: int
    witness_chain_d1: tuple[Cycle, ...]
    witness_chain_d2: tuple[Cycle, ...]


def _vertex_reachability(g: Graph) -> dict[str, set[str]]:
    reach: dict[str, set[str]] = {}
    for v in g.vertices:
        seen = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for e in g.out_edges[u]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    frontier.append(e.dst)
        reach[v] = seen
    return reach


def chain_stats(g: Graph) -> ChainStats:
    """Compute d1 and d2 with witness chains.

    Requires pairwise vertex-disjoint cycles; between distinct disjoint
    cycles the reachability relation is acyclic, so both maxima are longest
    paths in a DAG of cycles.  Raises CyclesIntersectError otherwise.
    """
    cycles = find_cycles(g)
    seen: set[str] = set()
    for c in cycles:
        if seen & set(c.vertices):
            raise CyclesIntersectError(
                "two distinct cycles share a vertex; chain statistics are undefined"
            )
        seen.update(c.vertices)
    if not cycles:
        return ChainStats(0, 0, (), ())

    reach = _vertex_reachability(g)
    n = len(cycles)
    implies = [
        [
            i != j
            and any(w in reach[v] for v in cycles[i].vertices for w in cycles[j].vertices)
            for j in range(n)
        ]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(i + 1, n):
            if implies[i][j] and implies[j][i]:
                raise RuntimeError(
                    "reachability between distinct disjoint cycles is cyclic; "
                    "this contradicts the disjointness just verified"
                )

    # Longest chain ending at each cycle, over a topological order of the DAG.
    indeg = [sum(implies[i][j] for i in range(n)) for j in range(n)]
    order: list[int] = [j for j in range(n) if indeg[j] == 0]
    pos = 0
    while pos < len(order):
        i = order[pos]
        pos += 1
        for j in range(n):
            if implies[i][j]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)

    longest = [1] * n
    parent = [-1] * n
    for j in order:
        for i in range(n):
            if implies[i][j] and longest[i] + 1 > longest[j]:
                longest[j] = longest[i] + 1
                parent[j] = i

    def chain_ending_at(j: int) -> tuple[Cycle, ...]:
        rev = []
        while j != -1:
            rev.append(cycles[j])
            j = parent[j]
        return tuple(reversed(rev))

    best1 = max(range(n), key=lambda j: longest[j])
    d1 = longest[best1]
    exits = [has_exit(c, g) for c in cycles]
    with_exit = [j for j in range(n) if exits[j]]
    if with_exit:
        best2 = max(with_exit, key=lambda j: longest[j])
        d2 = longest[best2]
        chain2 = chain_ending_at(best2)
    else:
        d2 = 0
        chain2 = ()
    return ChainStats(d1, d2, chain_ending_at(best1), chain2)
