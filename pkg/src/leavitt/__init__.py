"""Exact computation in Leavitt path algebras of finite directed graphs.

The package materializes the algebra of a graph as a confluent rewriting
system, reduces elements to canonical form, counts the canonical basis
exactly to produce the growth function, and classifies growth: exponential
when two distinct cycles meet, polynomial of an explicit integer degree
otherwise.
"""

from .classify import GrowthClass, GrowthKind, classify
from .errors import (
    BudgetError,
    CyclesIntersectError,
    ExpressionError,
    GraphError,
    LeavittError,
)
from .expressions import (
    format_element,
    format_gen,
    format_monomial,
    parse_expression,
)
from .graph import (
    ChainStats,
    Cycle,
    Edge,
    Graph,
    chain_stats,
    cycles_pairwise_disjoint,
    find_cycles,
    has_exit,
    make_graph,
    parse_graph,
)
from .growth import (
    EXPONENTIAL,
    FreeWitness,
    GrowthSequence,
    basis_words,
    dim_oracle,
    estimate_gk,
    free_witness,
    growth_sequence,
    is_basis_word,
)
from .ordering import (
    EQUAL,
    GREATER,
    LESS,
    Gen,
    GenKind,
    Monomial,
    OrderContext,
    build_order,
    compare,
    edge,
    star,
    starred,
    vertex,
)
from .rewrite import (
    ConfluenceReport,
    Conflict,
    Element,
    RewriteRule,
    RuleSet,
    build_rules,
    check_confluence,
    involve,
    multiply,
    reduce,
    star_reverse,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ChainStats",
    "ConfluenceReport",
    "Conflict",
    "Cycle",
    "CyclesIntersectError",
    "EQUAL",
    "EXPONENTIAL",
    "Edge",
    "Element",
    "ExpressionError",
    "FreeWitness",
    "Gen",
    "GenKind",
    "Graph",
    "GraphError",
    "GREATER",
    "GrowthClass",
    "GrowthKind",
    "GrowthSequence",
    "LeavittError",
    "LESS",
    "Monomial",
    "OrderContext",
    "RewriteRule",
    "RuleSet",
    "basis_words",
    "build_order",
    "build_rules",
    "chain_stats",
    "check_confluence",
    "classify",
    "compare",
    "cycles_pairwise_disjoint",
    "dim_oracle",
    "edge",
    "estimate_gk",
    "find_cycles",
    "format_element",
    "format_gen",
    "format_monomial",
    "free_witness",
    "growth_sequence",
    "has_exit",
    "involve",
    "is_basis_word",
    "make_graph",
    "multiply",
    "parse_expression",
    "parse_graph",
    "reduce",
    "star",
    "star_reverse",
    "starred",
    "vertex",
]
