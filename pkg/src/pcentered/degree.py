"""Randomised p-centered colouring of bounded-degree graphs.

Vertices are coloured one at a time (smallest uncoloured index first) with
a random colour.  When the new colour closes a violator ``H``, a BFS
spanning tree of ``H`` rooted at the new vertex is walked depth-first and
the first ``min(|H|, 2p)`` distinct vertices met are uncoloured again; the
new vertex is always among them, so no violator survives an iteration.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InputError, InvariantError, ResourceError
from .graph import ColorAssignment, Graph
from .verify import _grow, find_any_violator

DRAW_BLOCK = 4096
INVARIANT_CHECK_LIMIT = 200


def palette_size(delta: int, p: int, scale=1, doubled: bool = False) -> int:
    """``ceil(scale * 2**10 * delta**(2 - 1/p) * p)``, doubled on request.

    Evaluated exactly: the result is the least integer ``c`` with
    ``c**p >= (scale * 1024 * p)**p * delta**(2p - 1)``.
    """
    if delta < 0 or p < 1:
        raise InputError(f"need delta >= 0 and p >= 1, got delta={delta}, p={p}")
    a = Fraction(scale) * 1024 * p
    if a <= 0:
        raise InputError(f"palette scale must be positive, got {scale}")
    target = a**p * delta ** (2 * p - 1)
    c = max(0, math.floor(float(a) * delta ** (2 - 1 / p)) - 2)
    while Fraction(c) ** p < target:
        c += 1
    if delta == 0:
        c = max(c, 1)
    elif delta == 1:
        c = max(c, 2)
    return 2 * c if doubled else c


def default_iteration_cap(n: int, c: int) -> int:
    return math.ceil(2 * n * math.log(2 * c + 1)) + 64


def expected_iteration_bound(n: int, c: int) -> float:
    """Expected number of iterations when ``2c`` colours are available."""
    return 2 * n * math.log(2 * c + 1) + 4


@dataclass
class DegreeColorConfig:
    p: int
    seed: int = 0
    palette_size: Optional[int] = None
    doubled: bool = False
    iteration_cap: Optional[int] = None
    palette_scale: Fraction = Fraction(1)
    check_invariant: bool = False

    def __post_init__(self):
        if self.p < 1:
            raise InputError(f"p must be at least 1, got {self.p}")
        self.palette_scale = Fraction(self.palette_scale)

    def base_palette(self, g: Graph) -> int:
        if self.palette_size is not None:
            return self.palette_size
        return palette_size(g.max_degree(), self.p, self.palette_scale)

    def colors_available(self, g: Graph) -> int:
        c = self.base_palette(g)
        return 2 * c if self.doubled else c

    def cap(self, g: Graph) -> int:
        if self.iteration_cap is not None:
            return self.iteration_cap
        return max(g.n, default_iteration_cap(g.n, self.base_palette(g)))


@dataclass
class RunStats:
    iterations: int = 0
    violators: int = 0
    uncolored: int = 0
    palette: int = 0
    colored_trace: list[int] = field(default_factory=list)


class IterationCapReached(ResourceError):
    def __init__(self, partial: list, stats: RunStats, cap: int):
        super().__init__(
            f"no p-centered colouring within {cap} iterations "
            f"({sum(c is not None for c in partial)}/{len(partial)} vertices coloured)",
            cap=cap,
        )
        self.partial = partial
        self.stats = stats


def color_draws(seed: int, count: int, palette: int):
    """Counter-based stream of colour draws, produced in fixed-size blocks."""
    rng = np.random.Generator(np.random.Philox(seed))
    produced = 0
    while count is None or produced < count:
        block = rng.integers(0, palette, size=DRAW_BLOCK)
        for x in block.tolist():
            yield x
        produced += DRAW_BLOCK


def euler_prefix(g: Graph, vertices: Sequence[int], root: int, m: int) -> list[int]:
    """First ``m`` distinct vertices along a depth-first double traversal of a
    BFS spanning tree of ``g[vertices]`` rooted at ``root`` (children in
    ascending order)."""
    inside = set(vertices)
    children: dict[int, list[int]] = {root: []}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in inside and w not in children:
                children[w] = []
                children[u].append(w)
                queue.append(w)
    if len(children) != len(inside):
        raise InvariantError("violator is not connected")
    out = []
    stack = [root]
    while stack and len(out) < m:
        u = stack.pop()
        out.append(u)
        stack.extend(reversed(children[u]))
    return out


def color_bounded_degree(
    g: Graph, cfg: DegreeColorConfig, draws: Optional[Sequence[int]] = None
) -> tuple[ColorAssignment, RunStats]:
    """Run the randomised colourer once.

    ``draws`` replaces the seeded stream by an explicit colour sequence
    (one entry consumed per iteration).  Raises IterationCapReached, which
    carries the partial colouring, when the cap is hit.
    """
    p = cfg.p
    palette = cfg.colors_available(g)
    cap = cfg.cap(g)
    if draws is None:
        source = color_draws(cfg.seed, cap, palette)
    else:
        if any(not 0 <= x < palette for x in draws):
            raise InputError(f"explicit draws must lie in 0..{palette - 1}")
        source = iter(draws)
    check = cfg.check_invariant and g.n <= INVARIANT_CHECK_LIMIT

    colors: list = [None] * g.n
    uncolored = list(range(g.n))
    heapq.heapify(uncolored)
    colored = 0
    stats = RunStats(palette=palette)
    for _ in range(cap):
        if colored == g.n:
            break
        w = heapq.heappop(uncolored)
        while colors[w] is not None:
            w = heapq.heappop(uncolored)
        try:
            x = next(source)
        except StopIteration:
            break
        stats.iterations += 1
        colors[w] = x
        colored += 1
        viol = _grow(g.adj, colors, p, w)
        if viol is not None:
            stats.violators += 1
            m = min(len(viol.vertices), 2 * p)
            erase = euler_prefix(g, viol.vertices, w, m)
            if len(erase) != m or erase[0] != w:
                raise InvariantError("uncolouring step did not remove the expected vertices")
            for u in erase:
                colors[u] = None
                heapq.heappush(uncolored, u)
            colored -= m
            stats.uncolored += m
        stats.colored_trace.append(colored)
        if check and find_any_violator(g, colors, p) is not None:
            raise InvariantError(f"violator survived iteration {stats.iterations}")
    if colored != g.n:
        raise IterationCapReached(colors, stats, cap)
    return ColorAssignment.from_flat(colors, palette), stats


def color_with_retries(
    g: Graph, cfg: DegreeColorConfig, retries: int = 3
) -> tuple[ColorAssignment, RunStats]:
    """Retry with a derived seed and a doubled iteration cap after each failure."""
    cap = cfg.cap(g)
    last: Optional[IterationCapReached] = None
    for attempt in range(retries + 1):
        trial = DegreeColorConfig(
            p=cfg.p,
            seed=cfg.seed + attempt * 0x9E3779B97F4A7C15 % (1 << 63),
            palette_size=cfg.palette_size,
            doubled=cfg.doubled,
            iteration_cap=cap,
            palette_scale=cfg.palette_scale,
            check_invariant=cfg.check_invariant,
        )
        try:
            return color_bounded_degree(g, trial)
        except IterationCapReached as exc:
            last = exc
            cap *= 2
    assert last is not None
    raise last
