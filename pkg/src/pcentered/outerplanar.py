"""p-centered colouring of outerplanar graphs with p*ceil(log2(p+1)) + 2p + 1 colours.

Pipeline: complete the input to a maximal outerplanar graph ``G+`` (a
chordal 2-tree), BFS-layer it, and colour each layer's paths periodically
with ``p+1`` colours avoiding a forbidden set that earlier layers pushed
down.  A path ``P`` in layer ``i`` forbids, for every layer path ``P'`` in
the next ``p`` layers whose shadow lies on ``P``, its first colour plus the
in-order-tree ancestors of the colours seen on that shadow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx

from .errors import InputError, InvariantError
from .graph import (
    ColorAssignment,
    Graph,
    Layering,
    TreeDecomposition,
    bfs_layering,
    connected_components,
    is_chordal,
)


def log2_ceil_plus1(p: int) -> int:
    """``ceil(log2(p + 1))``."""
    return p.bit_length()


def outerplanar_palette_bound(p: int) -> int:
    return p * log2_ceil_plus1(p) + 2 * p + 1


# ---------------------------------------------------------------------------
# layouts and completion


def is_outerplanar_layout(g: Graph, order: Sequence[int]) -> bool:
    """True iff placing vertices on a circle in ``order`` draws no crossing."""
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    starts: list[list[int]] = [[] for _ in range(g.n)]
    ends: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        a, b = sorted((pos[u], pos[v]))
        starts[a].append(b)
        ends[b].append(a)
    stack: list[tuple[int, int]] = []
    for x in range(g.n):
        for a in sorted(ends[x], reverse=True):
            if not stack or stack[-1] != (a, x):
                return False
            stack.pop()
        for b in sorted(starts[x], reverse=True):
            stack.append((x, b))
    return True


def find_outerplanar_layout(g: Graph) -> Optional[tuple[int, ...]]:
    """A non-crossing circular order, or None if ``g`` is not outerplanar.

    ``g`` is outerplanar iff ``g`` plus an apex adjacent to everything is
    planar; the rotation around the apex in such an embedding is a
    circular order in which no two edges of ``g`` interleave.
    """
    if g.n <= 3:
        return tuple(range(g.n))
    h = nx.Graph()
    h.add_nodes_from(range(g.n + 1))
    h.add_edges_from(g.edges)
    h.add_edges_from((g.n, v) for v in range(g.n))
    planar, emb = nx.check_planarity(h)
    if not planar:
        return None
    order = list(emb.neighbors_cw_order(g.n))
    start = order.index(0)
    order = tuple(order[start:] + order[:start])
    if not is_outerplanar_layout(g, order):
        raise InvariantError("apex rotation produced a crossing layout")
    return order


def _layout_for(g: Graph, layout: Optional[Sequence[int]]) -> tuple[int, ...]:
    if layout is None:
        found = find_outerplanar_layout(g)
        if found is None:
            raise InputError("graph is not outerplanar")
        return found
    layout = tuple(layout)
    if not is_outerplanar_layout(g, layout):
        raise InputError("provided layout is not a non-crossing circular order of the graph")
    return layout


def complete_to_maximal_outerplanar(
    g: Graph, layout: Optional[Sequence[int]] = None
) -> tuple[Graph, tuple[int, ...]]:
    """Maximal outerplanar supergraph whose outer cycle follows the layout.

    Consecutive layout vertices are joined (this also links components),
    then every chordless face is triangulated by a fan from its
    lowest-index vertex.
    """
    order = _layout_for(g, layout)
    n = g.n
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else []), order
    adj = [set(a) for a in g.adj]
    for i in range(n):
        u, w = order[i], order[(i + 1) % n]
        adj[u].add(w)
        adj[w].add(u)
    polygons = [list(order)]
    while polygons:
        poly = polygons.pop()
        k = len(poly)
        if k == 3:
            continue
        idx = {v: i for i, v in enumerate(poly)}
        chord = None
        for i, u in enumerate(poly):
            for w in adj[u]:
                j = idx.get(w)
                if j is not None and (j - i) % k not in (1, k - 1):
                    chord = (min(i, j), max(i, j))
                    break
            if chord:
                break
        if chord:
            i, j = chord
            polygons.append(poly[i : j + 1])
            polygons.append(poly[j:] + poly[: i + 1])
        else:
            i0 = idx[min(poly)]
            v0 = poly[i0]
            for t in range(2, k - 1):
                w = poly[(i0 + t) % k]
                adj[v0].add(w)
                adj[w].add(v0)
    gplus = Graph(n, [(u, w) for u in range(n) for w in adj[u] if u < w])
    if gplus.m != 2 * n - 3:
        raise InvariantError(f"completion has {gplus.m} edges, expected {2 * n - 3}")
    return gplus, order


def outerplanar_decomposition(g: Graph, layout: Optional[Sequence[int]] = None) -> TreeDecomposition:
    """2-simple tree decomposition: the triangles of a maximal outerplanar
    completion, joined along shared edges."""
    if g.n <= 2:
        return TreeDecomposition((frozenset(range(g.n)),), ())
    gplus, _ = complete_to_maximal_outerplanar(g, layout)
    triangles = sorted(
        (u, v, w)
        for u, v in gplus.edges
        for w in gplus.adj[u]
        if w > v and gplus.has_edge(v, w)
    )
    holders: dict[tuple[int, int], list[int]] = {}
    for t, (u, v, w) in enumerate(triangles):
        for e in ((u, v), (u, w), (v, w)):
            holders.setdefault(e, []).append(t)
    tree = [tuple(ts) for ts in holders.values() if len(ts) == 2]
    return TreeDecomposition(tuple(frozenset(t) for t in triangles), tuple(tree))


# ---------------------------------------------------------------------------
# in-order forbidding tree


class InOrderForbiddingTree:
    """Balanced binary tree on labels ``1..p`` numbered in in-order.

    ``ancestors(l)`` is the set of labels on the path from node ``l`` to the
    root (``l`` included); label 0 stands for the path's first colour and
    has no ancestors.  Height is ``ceil(log2(p + 1))``.
    """

    def __init__(self, p: int):
        self.p = p
        self.parent: dict[int, Optional[int]] = {}
        self._build(1, p, None)
        self._anc = {0: frozenset()}
        for label in range(1, p + 1):
            chain = []
            x: Optional[int] = label
            while x is not None:
                chain.append(x)
                x = self.parent[x]
            self._anc[label] = frozenset(chain)

    def _build(self, lo: int, hi: int, parent: Optional[int]) -> None:
        if lo > hi:
            return
        mid = (lo + hi) // 2
        self.parent[mid] = parent
        self._build(lo, mid - 1, mid)
        self._build(mid + 1, hi, mid)

    @property
    def root(self) -> Optional[int]:
        return next((x for x, par in self.parent.items() if par is None), None)

    @property
    def height(self) -> int:
        return max((len(a) for a in self._anc.values()), default=0)

    def ancestors(self, label: int) -> frozenset:
        return self._anc[label]


# ---------------------------------------------------------------------------
# shadows


def shadows(gplus: Graph, layering: Layering, i: int) -> dict[frozenset, frozenset]:
    """Map each component of ``gplus`` above layer ``i`` to its layer-``i``
    neighbourhood.  In a chordal graph with a BFS layering every such
    shadow is a clique; a non-clique shadow raises InvariantError."""
    ok, _ = is_chordal(gplus)
    if not ok:
        raise InputError("shadows require a chordal graph")
    lay = layering.layer_of
    above = [v for v in range(gplus.n) if lay[v] > i]
    out = {}
    for comp in connected_components(gplus, above):
        shadow = frozenset(u for v in comp for u in gplus.adj[v] if lay[u] == i)
        _check_clique(gplus, shadow)
        out[frozenset(comp)] = shadow
    return out


def _check_clique(g: Graph, vs) -> None:
    vs = sorted(vs)
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if not g.has_edge(vs[a], vs[b]):
                raise InvariantError(f"shadow {vs} is not a clique")


# ---------------------------------------------------------------------------
# colouring


@dataclass
class LayerPath:
    layer: int
    vertices: tuple[int, ...]
    palette: tuple[int, ...] = ()
    forbidden: set = field(default_factory=set)


@dataclass
class LayerPathStructure:
    gplus: Graph
    layering: Layering
    paths: list[LayerPath]
    path_of: list[int]
    # donors[i][path id in layer i] -> [(path id above, shadow)]
    donors: list[dict[int, list[tuple[int, frozenset]]]]
    shadow_checks: int = 0
    max_forbidden: int = 0
    max_added: int = 0


def _orient_path(g: Graph, comp: list[int], layer: set) -> tuple[int, ...]:
    deg = {v: sum(1 for w in g.adj[v] if w in layer) for v in comp}
    edges = sum(deg.values()) // 2
    if edges != len(comp) - 1 or max(deg.values()) > 2:
        raise InvariantError(f"layer component {comp} is not a path")
    if len(comp) == 1:
        return (comp[0],)
    start = min(v for v in comp if deg[v] == 1)
    seq = [start]
    prev = None
    cur = start
    while len(seq) < len(comp):
        nxt = next(w for w in g.adj[cur] if w in layer and w != prev)
        seq.append(nxt)
        prev, cur = cur, nxt
    return tuple(seq)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def build_layer_paths(gplus: Graph, p: int) -> LayerPathStructure:
    """Layer paths of ``gplus`` plus, for every path, the paths in the next
    ``p`` layers whose shadow lies on it."""
    lay = bfs_layering(gplus)
    layer_of = lay.layer_of
    layers = lay.layers()
    paths: list[LayerPath] = []
    path_of = [-1] * gplus.n
    by_layer: list[list[int]] = []
    for i, vs in enumerate(layers):
        vset = set(vs)
        ids = []
        for comp in connected_components(gplus, vs):
            pid = len(paths)
            paths.append(LayerPath(i, _orient_path(gplus, comp, vset)))
            for v in comp:
                path_of[v] = pid
            ids.append(pid)
        by_layer.append(ids)

    donors: list[dict[int, list[tuple[int, frozenset]]]] = [dict() for _ in layers]
    dsu = _DSU(gplus.n)
    active = [False] * gplus.n
    checks = 0
    for i in range(len(layers) - 2, -1, -1):
        for v in layers[i + 1]:
            active[v] = True
            for w in gplus.adj[v]:
                if active[w]:
                    dsu.union(v, w)
        shadow: dict[int, set] = {}
        for u in layers[i]:
            for w in gplus.adj[u]:
                if layer_of[w] == i + 1:
                    shadow.setdefault(dsu.find(w), set()).add(u)
        for k in range(i + 1, min(len(layers), i + p + 1)):
            for pid in by_layer[k]:
                s = frozenset(shadow.get(dsu.find(paths[pid].vertices[0]), ()))
                if not s or len(s) > 2:
                    raise InvariantError(f"shadow of layer path {pid} in layer {i} has size {len(s)}")
                _check_clique(gplus, s)
                owners = {path_of[v] for v in s}
                if len(owners) != 1:
                    raise InvariantError(f"shadow {sorted(s)} spans several layer paths")
                checks += 1
                donors[i].setdefault(owners.pop(), []).append((pid, s))
    return LayerPathStructure(gplus, lay, paths, path_of, donors, shadow_checks=checks)


def color_outerplanar_with_structure(
    g: Graph, p: int, layout: Optional[Sequence[int]] = None
) -> tuple[ColorAssignment, LayerPathStructure]:
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    bound = outerplanar_palette_bound(p)
    if g.n == 0:
        gplus = Graph(0)
        return ColorAssignment((), (bound,)), LayerPathStructure(gplus, Layering(()), [], [], [])
    gplus, _ = complete_to_maximal_outerplanar(g, layout)
    st = build_layer_paths(gplus, p)
    tree = InOrderForbiddingTree(p)
    h = log2_ceil_plus1(p)
    forbid_cap = p * h + p
    label = [0] * g.n
    color = [0] * g.n
    by_layer: dict[int, list[int]] = {}
    for pid, path in enumerate(st.paths):
        by_layer.setdefault(path.layer, []).append(pid)
    for i in sorted(by_layer):
        for pid in by_layer[i]:
            path = st.paths[pid]
            free = [c for c in range(bound) if c not in path.forbidden][: p + 1]
            if len(free) < p + 1:
                raise InvariantError(
                    f"layer path {list(path.vertices)} has only {len(free)} free colours"
                )
            path.palette = tuple(free)
            for k, v in enumerate(path.vertices):
                label[v] = k % (p + 1)
                color[v] = free[label[v]]
        for pid in by_layer[i]:
            path = st.paths[pid]
            for target, shadow in st.donors[i].get(pid, ()):
                added = {path.palette[0]}
                for v in shadow:
                    added.update(path.palette[x] for x in tree.ancestors(label[v]))
                if len(added) > h + 1:
                    raise InvariantError(f"{len(added)} colours forbidden at once (limit {h + 1})")
                fb = st.paths[target].forbidden
                fb |= added
                if len(fb) > forbid_cap:
                    raise InvariantError(f"forbidden set grew to {len(fb)} (limit {forbid_cap})")
                st.max_added = max(st.max_added, len(added))
                st.max_forbidden = max(st.max_forbidden, len(fb))
    return ColorAssignment.from_flat(color, bound), st


def color_outerplanar(g: Graph, p: int, layout: Optional[Sequence[int]] = None) -> ColorAssignment:
    return color_outerplanar_with_structure(g, p, layout)[0]
