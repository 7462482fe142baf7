"""Graph families: lower-bound constructions and random members of the
upper-bound classes, each random family emitted with its certificate.

Explosive recursive families compute their size first and refuse requests
above ``size_cap`` (ResourceError naming the size).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional

from .errors import InputError, ResourceError
from .graph import Graph, Layering, TreeDecomposition, VertexPartition

DEFAULT_SIZE_CAP = 10**6


def _check_cap(size: int, size_cap: Optional[int], what: str) -> None:
    if size_cap is not None and size > size_cap:
        shown = str(size) if size < 10**30 else f"about 10^{len(str(size)) - 1}"
        raise ResourceError(f"{what} has {shown} vertices, above the cap of {size_cap}", size=size)


def _triangle_tree(triangles: list[tuple[int, ...]]) -> TreeDecomposition:
    """Bags = cliques; tree edges join cliques sharing all but one vertex
    (each such face is shared by at most two cliques in the families here)."""
    holders: dict[tuple, list[int]] = {}
    for t, tri in enumerate(triangles):
        for face in combinations(sorted(tri), len(tri) - 1):
            holders.setdefault(face, []).append(t)
    tree = [tuple(ts) for ts in holders.values() if len(ts) == 2]
    return TreeDecomposition(tuple(frozenset(t) for t in triangles), tuple(tree))


# ---------------------------------------------------------------------------
# trees of fans and G_k(w, d)


def tree_of_fans_size(w: int, d: int) -> int:
    return sum(w**j for j in range(d + 1))


def _fans(w: int, d: int):
    """Vertices level by level, left to right.  Returns n, edges, levels and
    a 2-simple decomposition (one bag per consecutive sibling pair)."""
    levels = [[0]]
    edges = []
    bags: list[frozenset] = []
    tree_edges = []
    holder = {0: None}  # some bag containing the vertex
    nxt = 1
    for _ in range(d):
        level = []
        for x in levels[-1]:
            kids = list(range(nxt, nxt + w))
            nxt += w
            level.extend(kids)
            edges += [(x, c) for c in kids]
            edges += list(zip(kids, kids[1:]))
            fan_bags = (
                [frozenset((x, a, b)) for a, b in zip(kids, kids[1:])]
                if w >= 2
                else [frozenset((x, kids[0]))]
            )
            first = len(bags)
            bags.extend(fan_bags)
            tree_edges += [(first + t, first + t + 1) for t in range(len(fan_bags) - 1)]
            if holder[x] is not None:
                tree_edges.append((holder[x], first))
            for t, c in enumerate(kids):
                holder[c] = first + min(t, len(fan_bags) - 1)
        levels.append(level)
    if not bags:
        bags = [frozenset((0,))]
    return nxt, edges, levels, TreeDecomposition(tuple(bags), tuple(tree_edges))


def tree_of_fans(w: int, d: int, size_cap: Optional[int] = DEFAULT_SIZE_CAP) -> Graph:
    """Complete ``w``-ary tree of depth ``d`` plus a path through the children
    of every inner vertex."""
    return tree_of_fans_with_decomposition(w, d, size_cap)[0]


def tree_of_fans_with_decomposition(
    w: int, d: int, size_cap: Optional[int] = DEFAULT_SIZE_CAP
) -> tuple[Graph, TreeDecomposition]:
    if w < 1 or d < 0:
        raise InputError(f"tree of fans needs w >= 1 and d >= 0, got w={w}, d={d}")
    _check_cap(tree_of_fans_size(w, d), size_cap, f"F({w},{d})")
    n, edges, _, dec = _fans(w, d)
    return Graph(n, edges), dec


def g_k_size(k: int, w: int, d: int) -> tuple[int, int]:
    """``(vertices, boundary size)`` of ``G_k(w, d)``."""
    n, b = tree_of_fans_size(w, d), w**d
    for _ in range(3, k + 1):
        a, nb = n, b
        for _ in range(d - 1):
            n, nb = n + nb * (a - 1), nb * b
        b = nb
    return n, b


@dataclass
class _Piece:
    n: int
    edges: list
    boundary: list
    bags: list
    tree_edges: list


def _universal_root(piece: _Piece) -> _Piece:
    present = {v for e in piece.edges for v in e if 0 in e}
    edges = piece.edges + [(0, u) for u in range(1, piece.n) if u not in present]
    bags = [b | {0} for b in piece.bags]
    return _Piece(piece.n, edges, list(piece.boundary), bags, list(piece.tree_edges))


def _glue(main: _Piece, unit: _Piece) -> _Piece:
    """Attach a copy of ``unit`` (root identified) at every boundary vertex."""
    n = main.n
    edges = list(main.edges)
    bags = list(main.bags)
    tree_edges = list(main.tree_edges)
    holder = {}
    for i, b in enumerate(main.bags):
        for v in b:
            holder.setdefault(v, i)
    boundary = []
    for u in main.boundary:
        def rel(x, u=u, off=n - 1):
            return u if x == 0 else x + off
        edges += [(rel(a), rel(b)) for a, b in unit.edges]
        start = len(bags)
        bags += [frozenset(rel(x) for x in b) for b in unit.bags]
        tree_edges += [(a + start, b + start) for a, b in unit.tree_edges]
        tree_edges.append((holder[u], start))
        boundary += [rel(x) for x in unit.boundary]
        n += unit.n - 1
    return _Piece(n, edges, boundary, bags, tree_edges)


def g_k_graph_with_decomposition(
    k: int, w: int, d: int, size_cap: Optional[int] = DEFAULT_SIZE_CAP
) -> tuple[Graph, list[int], TreeDecomposition]:
    """``G_k(w, d)`` with its boundary and a ``k``-simple decomposition.

    ``G_2(w, d)`` is the tree of fans; ``G_j(w, d, 1)`` makes the root of
    ``G_{j-1}(w, d)`` universal; ``G_j(w, d, delta + 1)`` glues a copy of
    ``G_j(w, d, 1)`` by its root onto every boundary vertex.
    """
    if k < 2 or w < 1 or d < 1:
        raise InputError(f"G_k(w,d) needs k >= 2, w >= 1, d >= 1; got k={k}, w={w}, d={d}")
    _check_cap(g_k_size(k, w, d)[0], size_cap, f"G_{k}({w},{d})")
    n, edges, levels, dec = _fans(w, d)
    piece = _Piece(n, edges, list(levels[-1]), list(dec.bags), list(dec.tree_edges))
    for _ in range(3, k + 1):
        unit = _universal_root(piece)
        piece = unit
        for _ in range(d - 1):
            piece = _glue(piece, unit)
    g = Graph(piece.n, piece.edges)
    return g, sorted(piece.boundary), TreeDecomposition(tuple(piece.bags), tuple(piece.tree_edges))


def g_k_graph(
    k: int, w: int, d: int, size_cap: Optional[int] = DEFAULT_SIZE_CAP
) -> tuple[Graph, list[int]]:
    g, boundary, _ = g_k_graph_with_decomposition(k, w, d, size_cap)
    return g, boundary


# ---------------------------------------------------------------------------
# treewidth lower-bound family G_(p,t,x,N)


@lru_cache(maxsize=None)
def lower_bound_size(p: int, t: int, x: int, N: int) -> int:
    if p == 0 or t == 0:
        return 1
    M = comb(p + t - 1, t - 1)
    X = (x - 1) * N**M + 1
    return lower_bound_size(p - 1, t, X, N) * (1 + X * lower_bound_size(p, t - 1, x, N))


def lower_bound_graph_with_decomposition(
    p: int, t: int, x: int, N: int, size_cap: Optional[int] = DEFAULT_SIZE_CAP
) -> tuple[Graph, TreeDecomposition]:
    """``G_(p,t,x,N)`` and a tree decomposition of width at most ``t``.

    Built from a copy of ``G_(p-1,t,X,N)`` by hanging ``X`` disjoint copies
    of ``G_(p,t-1,x,N)`` under every vertex, each copy fully joined to it.
    """
    if p < 0 or t < 0 or x < 2 or N < 1:
        raise InputError(f"need p,t >= 0, x >= 2, N >= 1; got p={p}, t={t}, x={x}, N={N}")
    _check_cap(lower_bound_size(p, t, x, N), size_cap, f"G_({p},{t},{x},{N})")

    def build(p, t, x):
        if p == 0 or t == 0:
            return 1, [], [frozenset((0,))], []
        M = comb(p + t - 1, t - 1)
        X = (x - 1) * N**M + 1
        n0, e0, b0, te0 = build(p - 1, t, X)
        n1, e1, b1, te1 = build(p, t - 1, x)
        n, edges, bags, tree_edges = n0, list(e0), list(b0), list(te0)
        holder = {}
        for i, b in enumerate(b0):
            for v in b:
                holder.setdefault(v, i)
        for v in range(n0):
            for _ in range(X):
                edges += [(a + n, b + n) for a, b in e1]
                edges += [(v, a + n) for a in range(n1)]
                start = len(bags)
                bags += [frozenset(a + n for a in b) | {v} for b in b1]
                tree_edges += [(a + start, b + start) for a, b in te1]
                tree_edges.append((holder[v], start))
                n += n1
        return n, edges, bags, tree_edges

    n, edges, bags, tree_edges = build(p, t, x)
    return Graph(n, edges), TreeDecomposition(tuple(bags), tuple(tree_edges))


def lower_bound_graph(
    p: int, t: int, x: int, N: int, size_cap: Optional[int] = DEFAULT_SIZE_CAP
) -> Graph:
    return lower_bound_graph_with_decomposition(p, t, x, N, size_cap)[0]


# ---------------------------------------------------------------------------
# random members of the upper-bound classes


def random_maximal_outerplanar(n: int, seed: int) -> tuple[Graph, TreeDecomposition]:
    """Random triangulation of a convex ``n``-gon with shuffled labels."""
    if n < 1:
        raise InputError("need n >= 1")
    rng = random.Random(seed)
    label = list(range(n))
    rng.shuffle(label)
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else []), TreeDecomposition((frozenset(range(n)),), ())
    edges = [(i, (i + 1) % n) for i in range(n)]
    triangles = []
    stack = [list(range(n))]
    while stack:
        poly = stack.pop()
        if len(poly) < 3:
            continue
        j = rng.randrange(1, len(poly) - 1)
        a, c, b = poly[0], poly[j], poly[-1]
        triangles.append((a, c, b))
        edges += [(a, c), (c, b), (a, b)]
        stack.append(poly[: j + 1])
        stack.append(poly[j:])
    edges = [(label[u], label[v]) for u, v in edges]
    triangles = [tuple(label[v] for v in t) for t in triangles]
    return Graph(n, edges), _triangle_tree(triangles)


def random_simple_ktree(k: int, n: int, seed: int) -> tuple[Graph, TreeDecomposition]:
    """Random simple ``k``-tree: every ``k``-clique is stacked on at most once,
    so it ends up in at most two ``(k+1)``-cliques."""
    if k < 1 or n < k + 1:
        raise InputError(f"simple k-tree needs k >= 1 and n >= k+1; got k={k}, n={n}")
    rng = random.Random(seed)
    base = tuple(range(k + 1))
    edges = list(combinations(base, 2))
    bags = [frozenset(base)]
    tree_edges = []
    free = [(face, 0) for face in combinations(base, k)]
    for v in range(k + 1, n):
        i = rng.randrange(len(free))
        free[i], free[-1] = free[-1], free[i]
        face, owner = free.pop()
        edges += [(u, v) for u in face]
        bags.append(frozenset(face) | {v})
        tree_edges.append((owner, len(bags) - 1))
        for sub in combinations(face, k - 1):
            free.append((tuple(sub) + (v,), len(bags) - 1))
    return Graph(n, edges), TreeDecomposition(tuple(bags), tuple(tree_edges))


def random_stacked_triangulation(n: int, seed: int) -> tuple[Graph, TreeDecomposition]:
    """Start from a triangle; repeatedly stack a vertex into a random inner face."""
    if n < 3:
        raise InputError("stacked triangulation needs n >= 3")
    rng = random.Random(seed)
    edges = [(0, 1), (0, 2), (1, 2)]
    if n == 3:
        return Graph(3, edges), TreeDecomposition((frozenset((0, 1, 2)),), ())
    edges += [(0, 3), (1, 3), (2, 3)]
    bags = [frozenset((0, 1, 2, 3))]
    tree_edges = []
    faces = [((0, 1, 3), 0), ((0, 2, 3), 0), ((1, 2, 3), 0)]
    for v in range(4, n):
        i = rng.randrange(len(faces))
        faces[i], faces[-1] = faces[-1], faces[i]
        (a, b, c), owner = faces.pop()
        edges += [(a, v), (b, v), (c, v)]
        bags.append(frozenset((a, b, c, v)))
        tree_edges.append((owner, len(bags) - 1))
        me = len(bags) - 1
        faces += [((a, b, v), me), ((a, c, v), me), ((b, c, v), me)]
    return Graph(n, edges), TreeDecomposition(tuple(bags), tuple(tree_edges))


def random_bounded_degree(
    n: int, delta: int, m: int, seed: int, proposal_budget: Optional[int] = None
) -> Graph:
    """Random edge proposals, rejected when they would exceed degree ``delta``."""
    if m > n * delta // 2:
        raise InputError(f"cannot place {m} edges with max degree {delta} on {n} vertices")
    rng = random.Random(seed)
    budget = proposal_budget if proposal_budget is not None else 50 * max(m, 1) + 1000
    deg = [0] * n
    edges: set = set()
    tries = 0
    while len(edges) < m:
        if tries >= budget:
            raise ResourceError(
                f"placed only {len(edges)} of {m} edges after {budget} proposals", placed=len(edges)
            )
        tries += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in edges or deg[u] >= delta or deg[v] >= delta:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph(n, edges)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r, c):
        return r * cols + c

    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph(rows * cols, edges)


CLASSICS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
    "grid": grid_graph,
}


def classic(name: str, *params: int) -> Graph:
    try:
        return CLASSICS[name](*params)
    except KeyError:
        raise InputError(f"unknown classic family {name!r}") from None


# ---------------------------------------------------------------------------
# certified product-structure instances


@dataclass
class ProductInstance:
    graph: Graph
    layering: Layering
    partition: VertexPartition


def synth_product_instance(
    h: Graph, layers: int, blowup: int, seed: int, edge_prob: float = 0.5
) -> ProductInstance:
    """A graph inside the layered product of ``h`` with a path, certified by
    construction: class ``X`` has 1..``blowup`` copies in every layer, edges
    only join copies of equal or adjacent classes in equal or adjacent
    layers, and the first copies of each layer reproduce ``h``."""
    if blowup not in (1, 2, 3):
        raise InputError(f"blowup must be 1, 2 or 3, got {blowup}")
    if layers < 1:
        raise InputError("need at least one layer")
    rng = random.Random(seed)
    copies: dict[tuple[int, int], list[int]] = {}
    layer_of: list[int] = []
    class_of: list[int] = []
    for i in range(layers):
        for x in range(h.n):
            ids = []
            for _ in range(rng.randint(1, blowup)):
                ids.append(len(layer_of))
                layer_of.append(i)
                class_of.append(x)
            copies[(x, i)] = ids
    edges = []
    for i in range(layers):
        for x in range(h.n):
            own = copies[(x, i)]
            edges += [e for e in combinations(own, 2) if rng.random() < edge_prob]
            for y in h.adj[x]:
                if y > x:
                    other = copies[(y, i)]
                    edges.append((own[0], other[0]))
                    edges += [
                        (a, b)
                        for a in own
                        for b in other
                        if (a, b) != (own[0], other[0]) and rng.random() < edge_prob
                    ]
            if i + 1 < layers:
                for y in (x, *h.adj[x]):
                    edges += [(a, b) for a in own for b in copies[(y, i + 1)] if rng.random() < edge_prob]
    return ProductInstance(
        Graph(len(layer_of), edges), Layering(tuple(layer_of)), VertexPartition(tuple(class_of))
    )
