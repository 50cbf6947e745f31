"""Generator alphabet and the length-lex order on words.

The alphabet has three tiers: one generator per vertex, one per edge, and
one starred ("ghost") copy of each edge.  Every vertex ranks below every
edge and every edge below every starred generator.  Edges sort by the rank
of their source vertex, and among edges with a common source the designated
special edge ranks last.  Vertices and starred generators take their rank
from declaration order.  Words are compared by length first, then letter by
letter; this makes the order a well-order and every rewrite step strictly
decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import TYPE_CHECKING, Mapping, NamedTuple

if TYPE_CHECKING:
    from .graph import Graph

LESS = -1
EQUAL = 0
GREATER = 1


class GenKind(IntEnum):
    VERTEX = 0
    EDGE = 1
    STAR = 2


class Gen(NamedTuple):
    """A single generator: a vertex, an edge, or a starred edge."""

    kind: GenKind
    name: str


#: A word over the generator alphabet.  The empty tuple is an internal
#: sentinel only; the algebra is non-unital and the empty word is never a
#: basis element.
Monomial = tuple[Gen, ...]


def vertex(name: str) -> Gen:
    return Gen(GenKind.VERTEX, name)


def edge(name: str) -> Gen:
    return Gen(GenKind.EDGE, name)


def star(name: str) -> Gen:
    return Gen(GenKind.STAR, name)


def starred(x: Gen) -> Gen:
    """The involution on a single generator: fixes vertices, swaps e and e*."""
    if x.kind == GenKind.EDGE:
        return Gen(GenKind.STAR, x.name)
    if x.kind == GenKind.STAR:
        return Gen(GenKind.EDGE, x.name)
    return x


@dataclass(frozen=True)
class OrderContext:
    """A fixed total order on the generators of one graph.

    ``alphabet`` lists every generator in ascending order; ``rank`` maps each
    generator to its position.  Instances are immutable and safe to share.
    """

    alphabet: tuple[Gen, ...]
    rank: Mapping[Gen, int]

    def key(self, m: Monomial) -> tuple[int, tuple[int, ...]]:
        """Sort key realizing the length-lex order."""
        rank = self.rank
        return (len(m), tuple(rank[x] for x in m))


def build_order(g: Graph) -> OrderContext:
    """Construct the generator order for ``g``.

    Vertices and starred generators rank by declaration order.  Edges rank by
    source vertex first; among edges with the same source the declaration
    order is kept except that the special edge moves to the top.
    """
    vrank = g.vertex_index
    decl = {e.name: i for i, e in enumerate(g.edges)}

    def edge_key(name: str) -> tuple[int, bool, int]:
        e = g.edge_map[name]
        return (vrank[e.src], g.special.get(e.src) == name, decl[name])

    edge_names = sorted((e.name for e in g.edges), key=edge_key)
    alphabet = (
        tuple(vertex(v) for v in g.vertices)
        + tuple(edge(n) for n in edge_names)
        + tuple(star(e.name) for e in g.edges)
    )
    rank = {x: i for i, x in enumerate(alphabet)}
    return OrderContext(alphabet=alphabet, rank=rank)


def compare(a: Monomial, b: Monomial, ctx: OrderContext) -> int:
    """Length-lex comparison; returns LESS, EQUAL, or GREATER."""
    ka, kb = ctx.key(a), ctx.key(b)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return EQUAL
