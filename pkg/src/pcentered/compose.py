"""Lifting colourings through certified structure.

``compose_planar`` takes a layering, a partition of layered width at most 3
and a p-centered colouring of the quotient, and colours every vertex with
``(layer mod (p+1), colour of its class, rank inside (class, layer))``.

``compose_genus`` handles a set ``Z`` of at most ``2g`` vertices per layer
on top of a coloured supergraph of the rest: ``Z`` vertices get
``(0, layer mod (p+1), rank in layer)``, the others ``(1, colour in the
supergraph)``.  The two halves are encoded into one flat palette, ``Z``
colours first.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import InputError
from .graph import (
    ColorAssignment,
    Graph,
    Layering,
    VertexPartition,
    layered_width_violation,
    quotient,
    validate_layering,
)
from .verify import find_centered_violation

MAX_LAYERED_WIDTH = 3


def _check_layering(g: Graph, layering: Layering, what: str = "layering") -> None:
    if len(layering.layer_of) != g.n:
        raise InputError(f"{what} covers {len(layering.layer_of)} vertices, graph has {g.n}")
    if not validate_layering(g, layering):
        bad = next(
            (u, v) for u, v in g.sorted_edges()
            if abs(layering.layer_of[u] - layering.layer_of[v]) > 1
        )
        raise InputError(f"{what}: edge {bad} skips a layer")


def compose_planar(
    g: Graph,
    layering: Layering,
    part: VertexPartition,
    psi: ColorAssignment,
    p: int,
    verify_psi: bool = False,
) -> ColorAssignment:
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    _check_layering(g, layering)
    if len(part.class_of) != g.n:
        raise InputError(f"partition covers {len(part.class_of)} vertices, graph has {g.n}")
    if psi.n != part.class_count:
        raise InputError(f"quotient colouring covers {psi.n} classes, partition has {part.class_count}")
    bad = layered_width_violation(layering, part, MAX_LAYERED_WIDTH)
    if bad is not None:
        cls, layer, size = bad
        raise InputError(
            f"class {cls} has {size} vertices in layer {layer} (layered width above {MAX_LAYERED_WIDTH})"
        )
    if verify_psi:
        viol = find_centered_violation(quotient(g, part), psi, p)
        if viol is not None:
            raise InputError(f"quotient colouring is not {p}-centered: {viol.describe()}")
    beta = psi.flat()
    rank: dict[tuple[int, int], int] = {}
    colors = []
    for v in range(g.n):
        key = (part.class_of[v], layering.layer_of[v])
        gamma = rank.get(key, 0)
        rank[key] = gamma + 1
        colors.append((layering.layer_of[v] % (p + 1), beta[part.class_of[v]], gamma))
    return ColorAssignment(tuple(colors), (p + 1, psi.palette_size, MAX_LAYERED_WIDTH))


def compose_genus(
    g: Graph,
    layering: Layering,
    z_set: Iterable[int],
    gplus: Graph,
    w_layering: Layering,
    phi_plus: ColorAssignment,
    p: int,
    genus: int,
    embed: Optional[Sequence[int]] = None,
) -> ColorAssignment:
    """``embed[v]`` names the ``gplus`` vertex of each ``v`` outside ``Z``
    (default: the same index).  Output colours below ``2*genus*(p+1)`` are
    the ``Z`` colours; the rest are offset copies of ``phi_plus``."""
    if p < 1:
        raise InputError(f"p must be at least 1, got {p}")
    if genus < 0:
        raise InputError(f"genus must be non-negative, got {genus}")
    _check_layering(g, layering)
    _check_layering(gplus, w_layering, "supergraph layering")
    z = set(z_set)
    if any(not 0 <= v < g.n for v in z):
        raise InputError("Z names a vertex outside the graph")
    if phi_plus.n != gplus.n:
        raise InputError(f"supergraph colouring covers {phi_plus.n} vertices, supergraph has {gplus.n}")
    rest = [v for v in range(g.n) if v not in z]
    if embed is None:
        embed = list(range(g.n))
    if len(embed) < g.n:
        raise InputError("embedding does not cover every vertex")
    image = [embed[v] for v in rest]
    if any(not 0 <= x < gplus.n for x in image) or len(set(image)) != len(image):
        raise InputError("embedding of G - Z into the supergraph is not injective")
    for u, v in g.sorted_edges():
        if u not in z and v not in z and not gplus.has_edge(embed[u], embed[v]):
            raise InputError(f"edge ({u}, {v}) of G - Z is missing from the supergraph")
    for v in rest:
        if w_layering.layer_of[embed[v]] != layering.layer_of[v]:
            raise InputError(f"vertex {v} sits in different layers of the two layerings")

    z_width = 2 * genus
    z_palette = z_width * (p + 1)
    rank: dict[int, int] = {}
    flat_plus = phi_plus.flat()
    out = []
    for v in range(g.n):
        layer = layering.layer_of[v]
        if v in z:
            r = rank.get(layer, 0)
            if r >= z_width:
                raise InputError(f"layer {layer} holds more than {z_width} vertices of Z")
            rank[layer] = r + 1
            out.append((layer % (p + 1)) * z_width + r)
        else:
            out.append(z_palette + flat_plus[embed[v]])
    return ColorAssignment.from_flat(out, z_palette + phi_plus.palette_size)
