"""Plain-text file formats.

graph          ``n m`` then ``m`` lines ``u v`` with ``0 <= u < v < n``
layering       ``n`` lines ``v layer``
partition      ``n`` lines ``v class``
decomposition  ``b``; ``b`` lines ``size v1 .. vk``; ``b-1`` lines ``bi bj``
coloring       ``n k c1 .. ck`` (palette shape); ``n`` lines ``v x1 .. xk``
vertex set     ``s`` then ``s`` lines ``v``
vertex order   same as vertex set, order kept (outerplanar layouts)

Writers emit records sorted by vertex / bag index.  Readers reject wrong
counts, out-of-range ids and duplicate records.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from .errors import InputError
from .graph import ColorAssignment, Graph, Layering, TreeDecomposition, VertexPartition

PathLike = Union[str, Path]


def _rows(text: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise InputError(f"line {lineno}: expected integers, got {line!r}") from None
    return rows


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


# graph ---------------------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = _rows(text)
    if not rows or len(rows[0]) != 2:
        raise InputError("graph header must be 'n m'")
    n, m = rows[0]
    body = rows[1:]
    if len(body) != m:
        raise InputError(f"graph header announces {m} edges, found {len(body)}")
    seen = set()
    for r in body:
        if len(r) != 2:
            raise InputError(f"edge line must have two entries: {r}")
        u, v = r
        if not 0 <= u < v < n:
            raise InputError(f"edge line must satisfy 0 <= u < v < n: {r}")
        if (u, v) in seen:
            raise InputError(f"duplicate edge {r}")
        seen.add((u, v))
    return Graph(n, seen)


# per-vertex integer maps ---------------------------------------------------


def _format_map(values) -> str:
    return "".join(f"{v} {x}\n" for v, x in enumerate(values))


def _parse_map(text: str, n: Optional[int], what: str) -> tuple[int, ...]:
    rows = _rows(text)
    if n is not None and len(rows) != n:
        raise InputError(f"{what} file has {len(rows)} lines, expected {n}")
    values: dict[int, int] = {}
    for r in rows:
        if len(r) != 2:
            raise InputError(f"{what} line must be 'v value': {r}")
        v, x = r
        if v in values:
            raise InputError(f"{what}: vertex {v} listed twice")
        values[v] = x
    if set(values) != set(range(len(values))):
        raise InputError(f"{what}: vertices must be exactly 0..n-1")
    return tuple(values[v] for v in range(len(values)))


def format_layering(layering: Layering) -> str:
    return _format_map(layering.layer_of)


def parse_layering(text: str, n: Optional[int] = None) -> Layering:
    return Layering(_parse_map(text, n, "layering"))


def format_partition(part: VertexPartition) -> str:
    return _format_map(part.class_of)


def parse_partition(text: str, n: Optional[int] = None) -> VertexPartition:
    return VertexPartition(_parse_map(text, n, "partition"))


# tree decompositions -------------------------------------------------------


def format_decomposition(d: TreeDecomposition) -> str:
    lines = [str(len(d.bags))]
    for bag in d.bags:
        lines.append(" ".join(str(x) for x in [len(bag), *sorted(bag)]))
    lines += [f"{a} {b}" for a, b in d.tree_edges]
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> TreeDecomposition:
    rows = _rows(text)
    if not rows or len(rows[0]) != 1:
        raise InputError("decomposition header must be the bag count")
    b = rows[0][0]
    if b < 1 or len(rows) != 1 + b + (b - 1):
        raise InputError(f"decomposition with {b} bags needs {2 * b} lines after the header")
    bags = []
    for r in rows[1 : 1 + b]:
        if not r or r[0] != len(r) - 1:
            raise InputError(f"bag line size mismatch: {r}")
        if len(set(r[1:])) != r[0]:
            raise InputError(f"bag line repeats a vertex: {r}")
        bags.append(frozenset(r[1:]))
    edges = []
    for r in rows[1 + b :]:
        if len(r) != 2 or not (0 <= r[0] < b and 0 <= r[1] < b) or r[0] == r[1]:
            raise InputError(f"bad tree edge line: {r}")
        edges.append((r[0], r[1]))
    return TreeDecomposition(tuple(bags), tuple(edges))


# colorings -----------------------------------------------------------------


def format_coloring(col: ColorAssignment) -> str:
    lines = [" ".join(str(x) for x in [col.n, len(col.shape), *col.shape])]
    for v, c in enumerate(col.colors):
        lines.append(" ".join(str(x) for x in [v, *c]))
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: Optional[int] = None) -> ColorAssignment:
    rows = _rows(text)
    if not rows or len(rows[0]) < 3 or len(rows[0]) != 2 + rows[0][1]:
        raise InputError("coloring header must be 'n k c1 .. ck'")
    cnt, k, *shape = rows[0]
    if n is not None and cnt != n:
        raise InputError(f"coloring covers {cnt} vertices, graph has {n}")
    body = rows[1:]
    if len(body) != cnt:
        raise InputError(f"coloring header announces {cnt} vertices, found {len(body)}")
    colors: dict[int, tuple[int, ...]] = {}
    for r in body:
        if len(r) != k + 1:
            raise InputError(f"coloring line must have {k + 1} entries: {r}")
        if r[0] in colors:
            raise InputError(f"coloring: vertex {r[0]} listed twice")
        colors[r[0]] = tuple(r[1:])
    if set(colors) != set(range(cnt)):
        raise InputError("coloring: vertices must be exactly 0..n-1")
    return ColorAssignment(tuple(colors[v] for v in range(cnt)), tuple(shape))


# vertex sets ---------------------------------------------------------------


def format_vertex_set(vertices) -> str:
    vs = sorted(set(vertices))
    return "".join(f"{x}\n" for x in [len(vs), *vs])


def parse_vertex_set(text: str) -> frozenset:
    return frozenset(parse_vertex_order(text))


def format_vertex_order(order) -> str:
    order = list(order)
    return "".join(f"{x}\n" for x in [len(order), *order])


def parse_vertex_order(text: str) -> tuple[int, ...]:
    rows = _rows(text)
    if not rows or len(rows[0]) != 1:
        raise InputError("vertex set header must be the set size")
    body = [r[0] for r in rows[1:] if len(r) == 1]
    if len(body) != rows[0][0] or len(body) != len(rows) - 1:
        raise InputError("vertex set size mismatch")
    if len(set(body)) != len(body):
        raise InputError("vertex set repeats a vertex")
    return tuple(body)


# file helpers --------------------------------------------------------------


def read_graph(path: PathLike) -> Graph:
    return parse_graph(_read(path))


def read_layering(path: PathLike, n: Optional[int] = None) -> Layering:
    return parse_layering(_read(path), n)


def read_partition(path: PathLike, n: Optional[int] = None) -> VertexPartition:
    return parse_partition(_read(path), n)


def read_decomposition(path: PathLike) -> TreeDecomposition:
    return parse_decomposition(_read(path))


def read_coloring(path: PathLike, n: Optional[int] = None) -> ColorAssignment:
    return parse_coloring(_read(path), n)


def read_vertex_set(path: PathLike) -> frozenset:
    return parse_vertex_set(_read(path))


def read_vertex_order(path: PathLike) -> tuple[int, ...]:
    return parse_vertex_order(_read(path))


def write_text(path: PathLike, text: str) -> None:
    Path(path).write_text(text)
