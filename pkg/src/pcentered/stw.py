"""p-centered colouring of graphs given with a simple tree decomposition.

Every bag is made a clique, the resulting chordal graph is BFS-layered, and
a vertex in layer ``i`` gets the pair ``(i mod (p+1), beta)`` where ``beta``
colours its layer graph, which has simple treewidth one less.  All layer
graphs draw ``beta`` from one shared palette.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Mapping, Optional, Union

from .errors import InputError, InvariantError
from .graph import (
    ColorAssignment,
    Graph,
    TreeDecomposition,
    bfs_layering,
    check_decomposition,
    connected_components,
    is_chordal,
)
from .outerplanar import color_outerplanar, outerplanar_palette_bound

LayerDecomposer = Union[
    Callable[[Graph, int], TreeDecomposition], Mapping[int, TreeDecomposition]
]


def stw_palette_bound(k: int, p: int) -> int:
    """Colours used by :func:`color_simple_treewidth` for simple width ``k``."""
    if k <= 1:
        return p + 1
    return (p + 1) ** (k - 2) * outerplanar_palette_bound(p)


def chordal_completion(g: Graph, d: TreeDecomposition, k: Optional[int] = None) -> Graph:
    """``g`` plus all edges inside bags; ``d`` must be a simple decomposition."""
    check_decomposition(g, d, require_simple=True, k=k)
    extra = [e for bag in d.bags for e in combinations(sorted(bag), 2)]
    gplus = g.with_edges(extra)
    if not is_chordal(gplus)[0]:
        raise InvariantError("completion of a tree decomposition is not chordal")
    return gplus


def _layer_decomposition(layer_decomposer, layer_graph: Graph, i: int) -> TreeDecomposition:
    if layer_decomposer is None:
        raise InputError(
            "simple treewidth above 3 needs a decomposition for every layer graph"
        )
    if callable(layer_decomposer):
        return layer_decomposer(layer_graph, i)
    try:
        return layer_decomposer[i]
    except KeyError:
        raise InputError(f"no decomposition supplied for layer {i}") from None


def color_simple_treewidth(
    g: Graph,
    d: TreeDecomposition,
    p: int,
    k: Optional[int] = None,
    layer_decomposer: Optional[LayerDecomposer] = None,
) -> ColorAssignment:
    """Colour ``g`` with at most :func:`stw_palette_bound` ``(k, p)`` colours.

    ``k`` defaults to the width of ``d``.  For ``k == 2`` the outerplanar
    colourer is applied directly.  For ``k >= 4`` the layer graphs (vertices
    relabelled in ascending order) need simple ``(k-1)``-decompositions from
    ``layer_decomposer``: a callable ``(layer_graph, layer_index)`` or a
    mapping keyed by layer index.
    """
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    if k is None:
        k = max(d.width, 1)
    if k < 1:
        raise InputError(f"simple treewidth must be at least 1, got {k}")
    gplus = chordal_completion(g, d, k)
    if k == 2:
        try:
            return color_outerplanar(gplus, p)
        except InputError as exc:
            raise InputError(f"width-2 completion is not outerplanar: {exc}") from None

    layering = bfs_layering(gplus)
    beta_bound = stw_palette_bound(k - 1, p) if k > 1 else 1
    beta = [0] * g.n
    if k > 1:
        for i, vs in enumerate(layering.layers()):
            sub, labels = gplus.induced_subgraph(vs)
            if k == 3:
                try:
                    col = color_outerplanar(sub, p)
                except InputError:
                    raise InputError(
                        f"layer {i} is not outerplanar; the decomposition is not {k}-simple"
                    ) from None
            else:
                sub_dec = _layer_decomposition(layer_decomposer, sub, i)
                nested = layer_decomposer if callable(layer_decomposer) else None
                col = color_simple_treewidth(sub, sub_dec, p, k - 1, nested)
            for local, x in enumerate(col.flat()):
                beta[labels[local]] = x
    if k == 1:
        for comp in connected_components(gplus):
            if len(comp) > 1 and any(gplus.degree(v) > 2 for v in comp):
                raise InvariantError("a 1-simple graph must be a disjoint union of paths")
    colors = [(layering.layer_of[v] % (p + 1), beta[v]) for v in range(g.n)]
    return ColorAssignment(tuple(colors), (p + 1, beta_bound))
