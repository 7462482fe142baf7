"""Exact chi_p and lin_p for small graphs by backtracking.

Colours are assigned in ascending vertex order.  Vertex ``i`` may only use
colours up to ``1 + max`` of the colours used so far, which removes palette
permutations.  After each assignment only violations through the newly
coloured vertex are searched for: the prefix was violation-free before, and
uncoloured vertices never belong to a violation, so any new one must
contain the new vertex.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InputError, ResourceError
from .graph import ColorAssignment, Graph
from .verify import _grow, find_linear_violation_through

KINDS = ("centered", "linear")


@dataclass
class ExactResult:
    """``value`` is None when no colouring with ``max_colors`` colours exists;
    then ``lower_bound == max_colors + 1``."""

    value: Optional[int]
    lower_bound: int
    coloring: Optional[ColorAssignment] = None
    nodes: int = 0


def _checker(kind: str) -> Callable:
    if kind == "centered":
        return lambda g, colors, p, v: _grow(g.adj, colors, p, v) is not None
    if kind == "linear":
        return lambda g, colors, p, v: find_linear_violation_through(g, colors, p, v) is not None
    raise InputError(f"unknown colouring kind {kind!r}; expected one of {KINDS}")


class _Search:
    def __init__(self, g: Graph, p: int, kind: str, deadline: Optional[float]):
        self.g = g
        self.p = p
        self.bad = _checker(kind)
        self.deadline = deadline
        self.nodes = 0

    def run(self, k: int) -> Optional[list[int]]:
        colors: list = [None] * self.g.n
        return colors if self._extend(colors, 0, -1, k) else None

    def _extend(self, colors, i, top, k) -> bool:
        if i == self.g.n:
            return True
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise TimeoutError
        for c in range(min(k, top + 2)):
            colors[i] = c
            if not self.bad(self.g, colors, self.p, i):
                if self._extend(colors, i + 1, max(top, c), k):
                    return True
        colors[i] = None
        return False


def _exact(
    g: Graph,
    p: int,
    kind: str,
    max_colors: Optional[int],
    time_budget: Optional[float],
    start: int = 1,
) -> ExactResult:
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    if g.n == 0:
        return ExactResult(0, 0, ColorAssignment((), (1,)))
    if max_colors is None:
        max_colors = g.n
    deadline = None if time_budget is None else time.monotonic() + time_budget
    search = _Search(g, p, kind, deadline)
    k = max(1, start)
    while k <= max_colors:
        try:
            found = search.run(k)
        except TimeoutError:
            raise ResourceError(
                f"time budget exhausted while testing {k} colours; {kind} number is at least {k}",
                lower_bound=k,
                upper_bound=g.n,
            ) from None
        if found is not None:
            return ExactResult(k, k, ColorAssignment.from_flat(found, k), search.nodes)
        k += 1
    return ExactResult(None, max_colors + 1, None, search.nodes)


def chi_p_exact(
    g: Graph, p: int, max_colors: Optional[int] = None, time_budget: Optional[float] = None
) -> ExactResult:
    """Least number of colours of a p-centered colouring (iterative deepening)."""
    return _exact(g, p, "centered", max_colors, time_budget)


def lin_p_exact(
    g: Graph, p: int, max_colors: Optional[int] = None, time_budget: Optional[float] = None
) -> ExactResult:
    """Least number of colours of a p-linear colouring (iterative deepening)."""
    return _exact(g, p, "linear", max_colors, time_budget)


def admits_coloring(
    g: Graph, p: int, k: int, kind: str = "centered", time_budget: Optional[float] = None
) -> Optional[ColorAssignment]:
    """A ``k``-colouring of the requested kind, or None after exhausting the search."""
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    search = _Search(g, p, kind, deadline)
    try:
        found = search.run(k)
    except TimeoutError:
        raise ResourceError(f"time budget exhausted deciding {k} colours", k=k) from None
    return None if found is None else ColorAssignment.from_flat(found, max(k, 1))


def lin_p_at_least(g: Graph, p: int, k: int, time_budget: Optional[float] = None) -> bool:
    """True iff every p-linear colouring of ``g`` needs at least ``k`` colours."""
    return k <= 1 or admits_coloring(g, p, k - 1, "linear", time_budget) is None


def chi_p_at_least(g: Graph, p: int, k: int, time_budget: Optional[float] = None) -> bool:
    return k <= 1 or admits_coloring(g, p, k - 1, "centered", time_budget) is None
