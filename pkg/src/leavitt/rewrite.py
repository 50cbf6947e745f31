"""Oriented rewriting system for the algebra of a graph.

The defining relations orient into rules whose left-hand sides are exactly
the two-letter words that are not allowed in a canonical basis word:
products of vertices, vertex/edge products, star-edge products, the special
pair e e* for the special edge of each non-sink vertex, and every adjacency
mismatch (non-composable pairs, which rewrite to zero).  Because every rule
replaces a two-letter subword by a combination of strictly smaller words,
rewriting terminates, and the overlap check certifies confluence, so normal
forms are canonical representatives of algebra elements.

Elements are finite mappings from monomials to exact coefficients (ints or
``fractions.Fraction``); the zero element is the empty mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Union

from .errors import GraphError
from .graph import Graph
from .ordering import Gen, Monomial, OrderContext, edge, star, starred, vertex

Coeff = Union[int, Fraction]
#: An algebra element in sparse form; absent monomials have coefficient zero.
Element = dict[Monomial, Coeff]


class RewriteRule(NamedTuple):
    lhs: Monomial
    rhs: Element


@dataclass(frozen=True)
class RuleSet:
    """The oriented rules of one graph, keyed by left-hand-side word.

    Immutable after construction; ``build_rules`` is the only sanctioned
    constructor for complete systems, but tests may assemble variants
    directly (e.g. with rules removed) to probe the confluence checker.
    """

    rules: Mapping[Monomial, Element]
    order: OrderContext
    graph: Graph

    def rule_items(self) -> Iterator[RewriteRule]:
        for lhs, rhs in self.rules.items():
            yield RewriteRule(lhs, rhs)


def _add_term(acc: Element, m: Monomial, c: Coeff) -> None:
    total = acc.get(m, 0) + c
    if total:
        acc[m] = total
    else:
        acc.pop(m, None)


def build_rules(g: Graph, ctx: OrderContext) -> RuleSet:
    """Orient the defining relations of ``g`` into a rewriting system.

    Rule families, all with two-letter left-hand sides:

    - vertex products:  u w -> u if u == w else 0
    - unit action:      s(e) e -> e,  e r(e) -> e,  r(e) e* -> e*,  e* s(e) -> e*,
      and the mismatched vertex/edge products -> 0
    - star-edge:        e* f -> r(e) if e == f else 0
    - special pair:     c c* -> v - sum of e e* over the other out-edges e of v,
      where c is the special edge of the non-sink v
    - adjacency:        e f -> 0 unless r(e) = s(f);  e f* -> 0 unless
      r(e) = r(f);  e* f* -> 0 unless s(e) = r(f)

    The adjacency rules are compositions of the unit-action and mismatch
    rules; adding them up front makes the irreducible words coincide with
    the canonical basis, and ``check_confluence`` certifies that no further
    rules are needed.  Every right-hand-side monomial is checked to be
    strictly smaller than its left-hand side, which guarantees termination.
    """
    rules: dict[Monomial, Element] = {}

    def put(a: Gen, b: Gen, rhs: Element) -> None:
        key = (a, b)
        assert key not in rules, f"duplicate rule for {key}"
        rules[key] = rhs

    for u in g.vertices:
        for w in g.vertices:
            put(vertex(u), vertex(w), {(vertex(u),): 1} if u == w else {})

    for e in g.edges:
        for v in g.vertices:
            put(
                vertex(v),
                edge(e.name),
                {(edge(e.name),): 1} if v == e.src else {},
            )
            put(
                edge(e.name),
                vertex(v),
                {(edge(e.name),): 1} if v == e.dst else {},
            )
            put(
                vertex(v),
                star(e.name),
                {(star(e.name),): 1} if v == e.dst else {},
            )
            put(
                star(e.name),
                vertex(v),
                {(star(e.name),): 1} if v == e.src else {},
            )

    for e in g.edges:
        for f in g.edges:
            put(
                star(e.name),
                edge(f.name),
                {(vertex(e.dst),): 1} if e.name == f.name else {},
            )
            if e.dst != f.src:
                put(edge(e.name), edge(f.name), {})
            if e.dst != f.dst:
                put(edge(e.name), star(f.name), {})
            if e.src != f.dst:
                put(star(e.name), star(f.name), {})

    for v in g.vertices:
        if g.is_sink(v):
            continue
        sp = g.special.get(v)
        if sp is None:
            raise GraphError(f"non-sink vertex {v!r} has no special edge")
        rhs: Element = {(vertex(v),): 1}
        for e in g.out_edges[v]:
            if e.name != sp:
                rhs[(edge(e.name), star(e.name))] = -1
        put(edge(sp), star(sp), rhs)

    key = ctx.key
    for lhs, rhs in rules.items():
        bound = key(lhs)
        for m in rhs:
            if key(m) >= bound:
                raise RuntimeError(
                    f"rule {lhs} -> {m} does not decrease the word order"
                )
    return RuleSet(rules=rules, order=ctx, graph=g)


def _pick_leftmost(m: Monomial, rules, rank) -> int | None:
    for i in range(len(m) - 1):
        if m[i : i + 2] in rules:
            return i
    return None


def _pick_rightmost(m: Monomial, rules, rank) -> int | None:
    for i in range(len(m) - 2, -1, -1):
        if m[i : i + 2] in rules:
            return i
    return None


def _pick_max_lhs(m: Monomial, rules, rank) -> int | None:
    best: int | None = None
    best_key: tuple[int, int] | None = None
    for i in range(len(m) - 1):
        pair = m[i : i + 2]
        if pair in rules:
            k = (rank[pair[0]], rank[pair[1]])
            if best_key is None or k > best_key:
                best, best_key = i, k
    return best


_PICKERS = {
    "max-lhs": _pick_max_lhs,
    "leftmost": _pick_leftmost,
    "rightmost": _pick_rightmost,
}


def reduce(x: Mapping[Monomial, Coeff], rs: RuleSet, strategy: str = "max-lhs") -> Element:
    """Rewrite ``x`` to its normal form.

    No monomial of the result contains a rule left-hand side as a contiguous
    subword.  Each step replaces one occurrence by strictly smaller words, so
    the agenda below always terminates; by confluence the result does not
    depend on the strategy.  The default picks the greatest applicable
    left-hand side, leftmost on ties, for reproducibility.
    """
    pick = _PICKERS[strategy]
    rules = rs.rules
    rank = rs.order.rank
    agenda: Element = {}
    for m, c in x.items():
        _add_term(agenda, m, c)
    out: Element = {}
    while agenda:
        m, c = agenda.popitem()
        pos = pick(m, rules, rank)
        if pos is None:
            _add_term(out, m, c)
            continue
        rhs = rules[m[pos : pos + 2]]
        prefix, suffix = m[:pos], m[pos + 2 :]
        for rm, rc in rhs.items():
            _add_term(agenda, prefix + rm + suffix, c * rc)
    return out


def multiply(
    x: Mapping[Monomial, Coeff], y: Mapping[Monomial, Coeff], rs: RuleSet
) -> Element:
    """Product in the algebra: bilinear concatenation followed by reduction."""
    prod: Element = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            _add_term(prod, mx + my, cx * cy)
    return reduce(prod, rs)


def star_reverse(x: Mapping[Monomial, Coeff]) -> Element:
    """Letterwise star-reversal of every monomial, without reduction."""
    out: Element = {}
    for m, c in x.items():
        _add_term(out, tuple(starred(g) for g in reversed(m)), c)
    return out


def involve(x: Mapping[Monomial, Coeff], rs: RuleSet) -> Element:
    """The involution of the algebra: star-reverse every monomial, then reduce."""
    return reduce(star_reverse(x), rs)


class Conflict(NamedTuple):
    word: Monomial
    left_normal_form: Element
    right_normal_form: Element


@dataclass(frozen=True)
class ConfluenceReport:
    confluent: bool
    conflicts: tuple[Conflict, ...]
    overlaps_checked: int


def check_confluence(rs: RuleSet) -> ConfluenceReport:
    """Resolve every overlap ambiguity between rule pairs.

    With two-letter left-hand sides the only ambiguities are words a b c
    where both (a, b) and (b, c) are rules (no left-hand side can contain
    another).  Each such word is rewritten both ways and fully reduced; any
    disagreement is reported with both normal forms.
    """
    for lhs in rs.rules:
        if len(lhs) != 2:
            raise ValueError("confluence check expects two-letter left-hand sides")
    by_first: dict[Gen, list[Monomial]] = {}
    for lhs in rs.rules:
        by_first.setdefault(lhs[0], []).append(lhs)

    conflicts: list[Conflict] = []
    checked = 0
    for (a, b), rhs1 in rs.rules.items():
        for lhs2 in by_first.get(b, ()):
            c = lhs2[1]
            checked += 1
            via_left: Element = {}
            for rm, rc in rhs1.items():
                _add_term(via_left, rm + (c,), rc)
            via_right: Element = {}
            for rm, rc in rs.rules[lhs2].items():
                _add_term(via_right, (a,) + rm, rc)
            left_nf = reduce(via_left, rs)
            right_nf = reduce(via_right, rs)
            if left_nf != right_nf:
                conflicts.append(Conflict((a, b, c), left_nf, right_nf))
    return ConfluenceReport(not conflicts, tuple(conflicts), checked)
