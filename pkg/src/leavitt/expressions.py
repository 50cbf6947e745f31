"""Parsing and printing of element expressions.

Grammar (whitespace insignificant)::

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := [integer | integer '/' integer] factor ('.' factor)*
    factor     := identifier ['*']

Identifiers resolve against the graph's vertex and edge names; a trailing
``*`` marks the starred copy of an edge.  A bare coefficient is not a term:
the algebra has no unit, so scalars are not elements.  The leading sign is
accepted so that printed elements parse back.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .errors import ExpressionError
from .graph import Graph
from .ordering import Gen, GenKind, Monomial, OrderContext
from .rewrite import Coeff, Element, _add_term

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([*./+-]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ExpressionError(f"unexpected character {rest[0]!r} in expression")
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2)))
        elif m.group(3) is not None:
            tokens.append((m.group(3), m.group(3)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], g: Graph):
        self.tokens = tokens
        self.pos = 0
        self.graph = g
        self.vertices = set(g.vertices)
        self.edges = set(g.edge_map)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expression(self) -> Element:
        out: Element = {}
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        coeff, mono = self.term()
        _add_term(out, mono, sign * coeff)
        while self.peek() is not None:
            op = self.take()[0]
            if op not in ("+", "-"):
                raise ExpressionError(f"expected '+' or '-' but found {op!r}")
            coeff, mono = self.term()
            _add_term(out, mono, -coeff if op == "-" else coeff)
        return out

    def term(self) -> tuple[Coeff, Monomial]:
        coeff: Coeff = 1
        if self.peek() == "int":
            num = int(self.take()[1])
            if self.peek() == "/":
                self.take()
                if self.peek() != "int":
                    raise ExpressionError("expected denominator after '/'")
                den = int(self.take()[1])
                if den == 0:
                    raise ExpressionError("zero denominator in coefficient")
                coeff = Fraction(num, den)
            else:
                coeff = num
        letters = [self.factor()]
        while self.peek() == ".":
            self.take()
            letters.append(self.factor())
        return coeff, tuple(letters)

    def factor(self) -> Gen:
        if self.peek() != "id":
            found = self.peek()
            raise ExpressionError(
                "expected an identifier"
                + (f" but found {found!r}" if found is not None else "")
            )
        name = self.take()[1]
        is_star = self.peek() == "*"
        if is_star:
            self.take()
        if name in self.edges:
            return Gen(GenKind.STAR if is_star else GenKind.EDGE, name)
        if name in self.vertices:
            if is_star:
                raise ExpressionError(f"cannot star the vertex {name!r}")
            return Gen(GenKind.VERTEX, name)
        raise ExpressionError(f"unknown identifier {name!r}")


def parse_expression(text: str, g: Graph) -> Element:
    """Parse ``text`` into an (unreduced) element over the generators of ``g``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    return _Parser(tokens, g).expression()


def format_gen(x: Gen) -> str:
    return x.name + "*" if x.kind == GenKind.STAR else x.name


def format_monomial(m: Monomial) -> str:
    return ".".join(format_gen(x) for x in m)


def format_element(x: Mapping[Monomial, Coeff], ctx: OrderContext) -> str:
    """Render an element deterministically, smallest monomial first.

    The output parses back under the expression grammar: ``v - e.e*``,
    ``2 e.f* - v``, ``1/2 v``.
    """
    if not x:
        return "0"
    parts: list[str] = []
    for m in sorted(x, key=ctx.key):
        c = x[m]
        mag = abs(c)
        body = format_monomial(m) if mag == 1 else f"{mag} {format_monomial(m)}"
        if not parts:
            parts.append(f"- {body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)
