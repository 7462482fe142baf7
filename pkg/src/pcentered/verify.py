"""Deciding p-centeredness and p-linearity, with witnesses.

A *violation* is a connected vertex set (a simple path, for the linear
variant) on which at most ``p`` colours appear and none of them exactly
once.  Colourings are passed either as a :class:`ColorAssignment` or as a
plain sequence of hashable, ordered colour values; partial colourings use
``None`` for uncoloured vertices.

Two search strategies for the centered check are provided:

``subsets``
    For every colour set ``S`` with ``|S| <= p``, every component of the
    subgraph induced by ``S``-coloured vertices must have a unique colour.
    This is exact: a violator ``H`` with colour set ``S`` sits inside one
    such component, all of whose colours are in ``S`` and therefore occur
    at least twice.

``growth``
    Start from a single vertex and repeatedly add a colour seen on the
    boundary of the current component.  Every violator is reached this
    way (the component for the violator's colour set keeps touching the
    missing colours), and the cost depends on local colour diversity
    rather than palette size.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Optional, Sequence, Union

from .errors import InputError, ResourceError
from .graph import ColorAssignment, Graph, connected_components

Coloring = Union[ColorAssignment, Sequence[Optional[Hashable]]]

MODES = ("growth", "subsets")
DEFAULT_LINEAR_CAP = 18


@dataclass(frozen=True)
class Violation:
    vertices: tuple[int, ...]
    colors: tuple
    kind: str = "centered"

    def describe(self) -> str:
        return (
            f"{self.kind} violation: vertices {list(self.vertices)} "
            f"use colours {list(self.colors)}, none exactly once"
        )


def color_list(col: Coloring) -> list:
    if isinstance(col, ColorAssignment):
        return col.flat()
    return list(col)


def _prepare(g: Graph, col: Coloring, p: int, partial: bool) -> list:
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    colors = color_list(col)
    if len(colors) != g.n:
        raise InputError(f"colouring covers {len(colors)} vertices, graph has {g.n}")
    if not partial:
        missing = [v for v, c in enumerate(colors) if c is None]
        if missing:
            raise InputError(f"vertex {missing[0]} is uncoloured")
    return colors


def _no_unique(counts: Counter) -> bool:
    return all(k >= 2 for k in counts.values())


def _component(adj, colors, allowed, start) -> list[int]:
    return _extend_component(adj, colors, allowed, [start])


def _extend_component(adj, colors, allowed, seed: list[int]) -> list[int]:
    """Component of ``allowed``-coloured vertices containing the connected set ``seed``."""
    seen = set(seed)
    out = list(seed)
    i = 0
    while i < len(out):
        u = out[i]
        i += 1
        for w in adj[u]:
            if w not in seen and colors[w] in allowed:
                seen.add(w)
                out.append(w)
    return out


def _has_unique(colors, comp) -> bool:
    counts: dict = {}
    for u in comp:
        c = colors[u]
        counts[c] = counts.get(c, 0) + 1
    return 1 in counts.values()


def _grow(adj, colors, p, v, memo=None) -> Optional[Violation]:
    """Growth search from ``v``.

    With ``memo`` (full scans) only colours larger than ``colors[v]`` are
    added, so each violator is found from a vertex carrying its smallest
    colour; states are shared between start vertices via ``(S, min K)``.
    Without ``memo`` the search is anchored: it finds a violator through
    ``v`` if one exists.
    """
    c0 = colors[v]
    above_only = memo is not None
    local: set = set()
    stack: list = [(frozenset((c0,)), [v])]
    while stack:
        s, seed = stack.pop()
        if s in local:
            continue
        local.add(s)
        comp = _extend_component(adj, colors, s, seed)
        if memo is not None:
            key = (s, min(comp))
            if key in memo:
                continue
            memo.add(key)
        if not _has_unique(colors, comp):
            return Violation(tuple(sorted(comp)), tuple(sorted(s)))
        if len(s) < p:
            nxt = set()
            for u in comp:
                for w in adj[u]:
                    c = colors[w]
                    if c is not None and c not in s and (not above_only or c > c0):
                        nxt.add(c)
            for c in sorted(nxt, reverse=True):
                t = s | {c}
                if t not in local:
                    stack.append((t, comp))
    return None


def _growth_scan(g: Graph, colors: list, p: int) -> Optional[Violation]:
    memo: set = set()
    for v in range(g.n):
        if colors[v] is None:
            continue
        found = _grow(g.adj, colors, p, v, memo)
        if found:
            return found
    return None


def _subsets_scan(g: Graph, colors: list, p: int) -> Optional[Violation]:
    classes: dict = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    palette = sorted(classes)
    for size in range(1, p + 1):
        for s in combinations(palette, size):
            members = [v for c in s for v in classes[c]]
            for comp in connected_components(g, members):
                if _no_unique(Counter(colors[u] for u in comp)):
                    used = tuple(sorted({colors[u] for u in comp}))
                    return Violation(tuple(comp), used)
    return None


def find_centered_violation(
    g: Graph, col: Coloring, p: int, mode: str = "growth"
) -> Optional[Violation]:
    colors = _prepare(g, col, p, partial=False)
    if mode == "growth":
        return _growth_scan(g, colors, p)
    if mode == "subsets":
        return _subsets_scan(g, colors, p)
    raise InputError(f"unknown verification mode {mode!r}; expected one of {MODES}")


def is_p_centered(g: Graph, col: Coloring, p: int, mode: str = "growth") -> bool:
    return find_centered_violation(g, col, p, mode) is None


def find_violator_containing(g: Graph, col: Coloring, p: int, v: int) -> Optional[Violation]:
    """A violator through ``v`` among coloured vertices, or None."""
    colors = _prepare(g, col, p, partial=True)
    if colors[v] is None:
        raise InputError(f"vertex {v} is uncoloured")
    return _grow(g.adj, colors, p, v)


def find_any_violator(g: Graph, col: Coloring, p: int) -> Optional[Violation]:
    """Full growth scan of a partial colouring (uncoloured vertices excluded)."""
    return _growth_scan(g, _prepare(g, col, p, partial=True), p)


# ---------------------------------------------------------------------------
# paths


def _path_violation(adj, colors, p, start) -> Optional[list[int]]:
    counts: Counter = Counter()
    path: list[int] = []
    on_path: set[int] = set()
    uniques = 0

    def push(u):
        nonlocal uniques
        c = colors[u]
        counts[c] += 1
        if counts[c] == 1:
            uniques += 1
        elif counts[c] == 2:
            uniques -= 1
        path.append(u)
        on_path.add(u)

    def pop():
        nonlocal uniques
        u = path.pop()
        on_path.discard(u)
        c = colors[u]
        counts[c] -= 1
        if counts[c] == 1:
            uniques += 1
        elif counts[c] == 0:
            uniques -= 1
            del counts[c]

    def dfs(u):
        push(u)
        if len(counts) <= p:
            if uniques == 0:
                return True
            for w in adj[u]:
                if w not in on_path and colors[w] is not None and dfs(w):
                    return True
        pop()
        return False

    return list(path) if dfs(start) else None


def find_linear_violation(
    g: Graph, col: Coloring, p: int, max_vertices: Optional[int] = DEFAULT_LINEAR_CAP
) -> Optional[Violation]:
    """Enumerate simple paths (pruned once more than ``p`` colours appear)."""
    colors = _prepare(g, col, p, partial=False)
    if max_vertices is not None and g.n > max_vertices:
        raise ResourceError(
            f"p-linear check limited to {max_vertices} vertices, graph has {g.n}",
            cap=max_vertices,
        )
    for s in range(g.n):
        path = _path_violation(g.adj, colors, p, s)
        if path:
            return Violation(tuple(path), tuple(sorted(set(colors[u] for u in path))), "linear")
    return None


def is_p_linear(
    g: Graph, col: Coloring, p: int, max_vertices: Optional[int] = DEFAULT_LINEAR_CAP
) -> bool:
    return find_linear_violation(g, col, p, max_vertices) is None


def find_linear_violation_through(g: Graph, col: Coloring, p: int, v: int) -> Optional[Violation]:
    """A bad simple path through ``v`` among coloured vertices, or None.

    Paths through ``v`` are glued from two vertex-disjoint arms leaving ``v``.
    """
    colors = _prepare(g, col, p, partial=True)
    if colors[v] is None:
        raise InputError(f"vertex {v} is uncoloured")
    arms: list[tuple[tuple[int, ...], frozenset, Counter]] = [((), frozenset(), Counter())]

    def extend(u, seq, cnt):
        for w in g.adj[u]:
            if w == v or w in seq or colors[w] is None:
                continue
            c2 = cnt.copy()
            c2[colors[w]] += 1
            if len(c2.keys() | {colors[v]}) > p:
                continue
            seq2 = seq + (w,)
            arms.append((seq2, frozenset(seq2), c2))
            extend(w, seq2, c2)

    extend(v, (), Counter())
    base = Counter({colors[v]: 1})
    for i, (sa, fa, ca) in enumerate(arms):
        for sb, fb, cb in arms[i:]:
            if fa & fb:
                continue
            total = ca + cb + base
            if len(total) <= p and _no_unique(total):
                path = tuple(reversed(sa)) + (v,) + sb
                return Violation(path, tuple(sorted(total)), "linear")
    return None


def check_violation(g: Graph, col: Coloring, p: int, viol: Violation) -> bool:
    """Independently re-validate a reported violation."""
    colors = color_list(col)
    vs = list(viol.vertices)
    if not vs or len(set(vs)) != len(vs) or any(not 0 <= u < g.n for u in vs):
        return False
    if any(colors[u] is None for u in vs):
        return False
    if viol.kind == "linear":
        if any(not g.has_edge(a, b) for a, b in zip(vs, vs[1:])):
            return False
    elif len(connected_components(g, vs)) != 1:
        return False
    counts = Counter(colors[u] for u in vs)
    return set(counts) == set(viol.colors) and len(counts) <= p and _no_unique(counts)
