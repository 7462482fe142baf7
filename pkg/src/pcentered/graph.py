"""Core graph types and structural helpers.

Vertices are dense integers ``0..n-1``.  Every "pick an arbitrary vertex /
ordering" choice made anywhere in the package resolves to ascending index,
so all results are reproducible.
"""

from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Optional, Sequence

from .errors import InputError


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_adjsets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) outside 0..{n - 1}")
            norm.add((u, v) if u < v else (v, u))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._adjsets = tuple(frozenset(a) for a in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(h, old)`` where ``h`` is relabelled so ``old[i]`` is the
        original vertex behind new vertex ``i`` (ascending order kept)."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        edges = [
            (new[u], new[w])
            for u in old
            for w in self.adj[u]
            if u < w and w in new
        ]
        return Graph(len(old), edges), old

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(extra))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Layering:
    layer_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "layer_of", tuple(int(x) for x in self.layer_of))
        if any(x < 0 for x in self.layer_of):
            raise InputError("layer indices must be non-negative")

    @property
    def layer_count(self) -> int:
        return max(self.layer_of, default=-1) + 1

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.layer_count)]
        for v, i in enumerate(self.layer_of):
            out[i].append(v)
        return out


@dataclass(frozen=True)
class VertexPartition:
    """Partition given by a class id per vertex; ids must be ``0..k-1``
    with every class non-empty."""

    class_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "class_of", tuple(int(x) for x in self.class_of))
        used = set(self.class_of)
        if used and used != set(range(len(used))):
            raise InputError("partition class ids must be exactly 0..k-1 (no empty classes)")

    @property
    def class_count(self) -> int:
        return len(set(self.class_of))

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed ``0..b-1`` plus the edges of the tree joining them."""

    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(
            self,
            "tree_edges",
            tuple(sorted((min(a, b), max(a, b)) for a, b in self.tree_edges)),
        )

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def tree(self) -> Graph:
        return Graph(len(self.bags), self.tree_edges)

    def restrict(self, vertices: Iterable[int], relabel: Optional[dict] = None) -> "TreeDecomposition":
        keep = set(vertices)
        bags = []
        for b in self.bags:
            r = b & keep
            bags.append(frozenset(relabel[v] for v in r) if relabel else r)
        return TreeDecomposition(tuple(bags), self.tree_edges)


@dataclass(frozen=True)
class ColorAssignment:
    """Per-vertex colour tuples with a per-coordinate bound.

    ``flat()`` is the row-major encoding used at IO boundaries and by the
    verifier; it is a bijection between tuples within ``shape`` and
    ``range(palette_size)``.
    """

    colors: tuple[tuple[int, ...], ...]
    shape: tuple[int, ...]

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        if not 1 <= len(shape) <= 4 or any(s < 1 for s in shape):
            raise InputError(f"bad palette shape {shape}")
        colors = tuple(tuple(int(x) for x in c) for c in self.colors)
        for v, c in enumerate(colors):
            if len(c) != len(shape):
                raise InputError(f"vertex {v}: colour {c} does not match shape {shape}")
            if any(not 0 <= x < s for x, s in zip(c, shape)):
                raise InputError(f"vertex {v}: colour {c} outside shape {shape}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_flat(cls, values: Sequence[int], bound: Optional[int] = None) -> "ColorAssignment":
        values = [int(x) for x in values]
        if bound is None:
            bound = max(values, default=0) + 1
        return cls(tuple((x,) for x in values), (bound,))

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def palette_size(self) -> int:
        return prod(self.shape)

    def encode(self, color: Sequence[int]) -> int:
        x = 0
        for c, s in zip(color, self.shape):
            x = x * s + c
        return x

    def decode(self, x: int) -> tuple[int, ...]:
        out = []
        for s in reversed(self.shape):
            x, r = divmod(x, s)
            out.append(r)
        return tuple(reversed(out))

    def flat(self) -> list[int]:
        return [self.encode(c) for c in self.colors]

    def colors_used(self) -> int:
        return len(set(self.colors))


# ---------------------------------------------------------------------------
# basic algorithms


def connected_components(g: Graph, restrict: Optional[Iterable[int]] = None) -> list[list[int]]:
    """Components of ``g`` (or of the subgraph induced by ``restrict``),
    each sorted, listed by minimum element."""
    if restrict is None:
        allowed = None
        order: Iterable[int] = range(g.n)
    else:
        allowed = set(restrict)
        order = sorted(allowed)
    seen: set[int] = set()
    comps = []
    for s in order:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def bfs_layering(g: Graph, roots: Optional[Sequence[int]] = None) -> Layering:
    """BFS layering from one root per component (default: smallest index)."""
    comps = connected_components(g)
    if roots is None:
        roots = [c[0] for c in comps]
    else:
        roots = list(roots)
        comp_of = {}
        for i, c in enumerate(comps):
            for v in c:
                comp_of[v] = i
        hit = sorted(comp_of.get(r, -1) for r in roots)
        if hit != list(range(len(comps))):
            raise InputError("roots must contain exactly one vertex per connected component")
    dist = [-1] * g.n
    for r in roots:
        dist[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    return Layering(tuple(dist))


def quotient(g: Graph, part: VertexPartition) -> Graph:
    cls = part.class_of
    edges = {(cls[u], cls[v]) for u, v in g.edges if cls[u] != cls[v]}
    return Graph(part.class_count, edges)


def maximum_cardinality_search(g: Graph) -> list[int]:
    """MCS visit order; ties go to the smallest vertex index."""
    weight = [0] * g.n
    done = [False] * g.n
    heap = [(0, v) for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    while heap:
        w, v = heapq.heappop(heap)
        if done[v] or -w != weight[v]:
            continue
        done[v] = True
        order.append(v)
        for u in g.adj[v]:
            if not done[u]:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    return order


def is_perfect_elimination_order(g: Graph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n:
        return False
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        first = min(later, key=pos.__getitem__)
        for u in later:
            if u != first and not g.has_edge(first, u):
                return False
    return True


def is_chordal(g: Graph) -> tuple[bool, Optional[list[int]]]:
    """Return ``(True, peo)`` for chordal graphs, ``(False, None)`` otherwise."""
    peo = list(reversed(maximum_cardinality_search(g)))
    if is_perfect_elimination_order(g, peo):
        return True, peo
    return False, None


# ---------------------------------------------------------------------------
# validators


def validate_layering(g: Graph, layering: Layering) -> bool:
    if len(layering.layer_of) != g.n:
        return False
    lay = layering.layer_of
    return all(abs(lay[u] - lay[v]) <= 1 for u, v in g.edges)


def layered_width_violation(
    layering: Layering, part: VertexPartition, ell: int
) -> Optional[tuple[int, int, int]]:
    """First ``(class, layer, size)`` whose intersection exceeds ``ell``."""
    counts = Counter(zip(part.class_of, layering.layer_of))
    for (c, i), k in sorted(counts.items()):
        if k > ell:
            return c, i, k
    return None


def validate_partition_layered_width(
    g: Graph, layering: Layering, part: VertexPartition, ell: int
) -> bool:
    if len(part.class_of) != g.n or not validate_layering(g, layering):
        return False
    return layered_width_violation(layering, part, ell) is None


def check_decomposition(
    g: Graph, d: TreeDecomposition, require_simple: bool = False, k: Optional[int] = None
) -> None:
    """Raise InputError describing the first failed condition.

    Simplicity is tested against ``k`` (default: the decomposition width):
    every ``k``-set of vertices may lie in at most two bags.
    """
    b = len(d.bags)
    if g.n == 0:
        return
    if b == 0:
        raise InputError("decomposition has no bags")
    for bag in d.bags:
        if any(not 0 <= v < g.n for v in bag):
            raise InputError(f"bag {sorted(bag)} names a vertex outside the graph")
    tree = d.tree
    if tree.m != b - 1 or len(connected_components(tree)) != 1:
        raise InputError("bag tree is not a tree")
    holders: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(d.bags):
        for v in bag:
            holders[v].append(i)
    for v in range(g.n):
        if not holders[v]:
            raise InputError(f"vertex {v} is in no bag")
        if len(connected_components(tree, holders[v])) != 1:
            raise InputError(f"bags containing vertex {v} are not connected in the tree")
    for u, v in g.edges:
        if not any(v in d.bags[i] for i in holders[u]):
            raise InputError(f"edge ({u}, {v}) is not covered by any bag")
    if k is None:
        k = d.width
    if d.width > k:
        raise InputError(f"decomposition width {d.width} exceeds {k}")
    if require_simple and k >= 1:
        seen: Counter = Counter()
        for bag in d.bags:
            if len(bag) >= k:
                for x in combinations(sorted(bag), k):
                    seen[x] += 1
        for x, c in sorted(seen.items()):
            if c > 2:
                raise InputError(f"vertex set {list(x)} lies in {c} bags (not {k}-simple)")


def validate_decomposition(
    g: Graph, d: TreeDecomposition, require_simple: bool = False, k: Optional[int] = None
) -> bool:
    try:
        check_decomposition(g, d, require_simple, k)
    except InputError:
        return False
    return True
