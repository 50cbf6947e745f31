"""Growth classification of the algebra from graph structure alone.

Two distinct cycles sharing a vertex force exponential growth (they span a
free subalgebra); otherwise growth is polynomial of integer degree
max(2*d1 - 1, 2*d2) in the chain numbers, clamped to 0 for acyclic graphs,
whose algebras are finite-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import ChainStats, Graph, chain_stats
from .growth import FreeWitness, free_witness


class GrowthKind(Enum):
    EXPONENTIAL = "Exponential"
    POLYNOMIAL = "Polynomial"


@dataclass(frozen=True)
class GrowthClass:
    kind: GrowthKind
    gk: int | None = None
    stats: ChainStats | None = None
    witness: FreeWitness | None = None


def classify(g: Graph) -> GrowthClass:
    """Classify growth: exponential with a free witness, or polynomial with
    its exact integer growth degree and the chain statistics behind it."""
    witness = free_witness(g)
    if witness is not None:
        return GrowthClass(kind=GrowthKind.EXPONENTIAL, witness=witness)
    stats = chain_stats(g)
    gk = max(2 * stats.d1 - 1, 2 * stats.d2, 0)
    return GrowthClass(kind=GrowthKind.POLYNOMIAL, gk=gk, stats=stats)
