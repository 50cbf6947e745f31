"""Exception types shared across the package."""

from __future__ import annotations


class LeavittError(Exception):
    """Base class for all domain errors raised by this package."""


class GraphError(LeavittError):
    """Malformed graph document or violated graph invariant."""


class ExpressionError(LeavittError):
    """Syntax or resolution error in an element expression."""


class CyclesIntersectError(LeavittError):
    """Chain statistics requested for a graph whose cycles share a vertex."""


class BudgetError(LeavittError):
    """An enumeration would exceed the configured word budget."""
