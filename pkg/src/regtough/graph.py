"""Simple undirected graphs stored as adjacency bitsets.

Vertex sets are exchanged as ``frozenset[int]`` at the API boundary and as
``int`` bitmasks internally (bit ``v`` set means vertex ``v`` is a member).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

EXACT_VERTEX_CAP = 64


class GraphError(ValueError):
    """Invalid graph construction or generator parameters."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class MalformedLineError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class LoopError(ParseError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count differs from n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {u} has a neighbour out of range")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
            r = row
            while r:
                low = r & -r
                v = low.bit_length() - 1
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"edge {u}-{v} is not symmetric")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if rows[u] >> v & 1:
                raise GraphError(f"duplicate edge {u}-{v}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> frozenset[int]:
        return members(self.adj[v])

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    yield u, v
                row >>= 1
                v += 1

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def edges_between(self, x: int, y: int) -> int:
        """Number of edges between disjoint vertex bitmasks ``x`` and ``y``."""
        total = 0
        while x:
            low = x & -x
            total += (self.adj[low.bit_length() - 1] & y).bit_count()
            x ^= low
        return total

    def edges_within(self, x: int) -> int:
        total = 0
        r = x
        while r:
            low = r & -r
            total += (self.adj[low.bit_length() - 1] & x).bit_count()
            r ^= low
        return total // 2


def component_masks(g: Graph, alive: int) -> list[int]:
    """Connected components of the subgraph induced by bitmask ``alive``."""
    adj = g.adj
    comps = []
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= adj[low.bit_length() - 1]
                f ^= low
            frontier = reach & alive & ~comp
            comp |= frontier
        comps.append(comp)
        alive &= ~comp
    return comps


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Components of ``g - removed``, ordered by smallest member."""
    rm = mask_of(removed)
    if rm >> g.n:
        raise GraphError("removed set contains vertices outside the graph")
    alive = ((1 << g.n) - 1) & ~rm
    # lowest-bit seeding already yields the canonical order
    return [members(c) for c in component_masks(g, alive)]


def degree_profile(g: Graph) -> tuple[bool, int | None]:
    degrees = {g.degree(v) for v in range(g.n)}
    if len(degrees) == 1:
        return True, degrees.pop()
    return False, None


def structural_flags(g: Graph) -> tuple[bool, bool, bool]:
    """(connected, bipartite, complete) by breadth-first 2-colouring."""
    colour = [-1] * g.n
    bipartite = True
    n_comp = 0
    for root in range(g.n):
        if colour[root] >= 0:
            continue
        n_comp += 1
        colour[root] = 0
        queue = [root]
        for u in queue:
            for v in g.neighbors(u):
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    bipartite = False
    complete = all(g.degree(v) == g.n - 1 for v in range(g.n))
    return n_comp == 1, bipartite, complete


# ---------------------------------------------------------------------------
# edge-list text format

def load_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` edge-list format."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise MalformedLineError(1, "empty document, expected header 'n m'")
    lineno, header = lines[0]
    n, m = _int_pair(lineno, header)
    if n < 1 or m < 0:
        raise MalformedLineError(lineno, f"bad header {header!r}")
    body = lines[1:]
    if len(body) != m:
        raise MalformedLineError(
            body[-1][0] if body else lineno,
            f"header announces {m} edges but {len(body)} lines follow",
        )
    rows = [0] * n
    for lineno, ln in body:
        u, v = _int_pair(lineno, ln)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(lineno, f"vertex out of range 0..{n - 1}: {ln!r}")
        if u == v:
            raise LoopError(lineno, f"loop at vertex {u}")
        if rows[u] >> v & 1:
            raise DuplicateEdgeError(lineno, f"duplicate edge {u}-{v}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def _int_pair(lineno: int, line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise MalformedLineError(lineno, f"expected two integers, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise MalformedLineError(lineno, f"expected two integers, got {line!r}") from None


def dump_graph(g: Graph) -> str:
    edges = list(g.edges())
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# generators

def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with sides ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise GraphError("complete bipartite graph needs a, b >= 1")
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_regular_graph(n: int, d: int, seed: int, max_tries: int = 1000) -> Graph:
    """Uniform-ish random d-regular graph by the configuration (pairing) model.

    Whole pairings containing a loop or a repeated edge are discarded.
    """
    if d < 0 or n < 1 or d >= n:
        raise GraphError(f"random regular graph needs 0 <= d < n (got n={n}, d={d})")
    if n * d % 2:
        raise GraphError(f"n*d must be even (got n={n}, d={d})")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(stubs)
        rows = [0] * n
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or rows[u] >> v & 1:
                ok = False
                break
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        if ok:
            return Graph(n, tuple(rows))
    raise GraphError(f"pairing model failed {max_tries} times for n={n}, d={d}")


def extremal_graph(d: int, k: int) -> Graph:
    """The d-regular graph of order k + d(d+1) with a k-vertex cut leaving d parts.

    Vertices ``0..k-1`` form the independent set S; copy ``c`` of
    K_{d+1} minus a k/2-edge matching occupies ``k + c(d+1) .. k + (c+1)(d+1) - 1``.
    In each copy the matching pairs local vertices ``2i`` and ``2i+1`` for
    ``i < k/2`` and local vertex ``j < k`` is joined to ``s_j``.
    """
    if d < 3:
        raise GraphError("extremal graph needs d >= 3")
    if k % 2 or not 2 <= k < d:
        raise GraphError(f"extremal graph needs k even with 2 <= k < d (got d={d}, k={k})")
    edges = []
    for c in range(d):
        base = k + c * (d + 1)
        removed = {(2 * i, 2 * i + 1) for i in range(k // 2)}
        edges.extend(
            (base + x, base + y)
            for x, y in combinations(range(d + 1), 2)
            if (x, y) not in removed
        )
        edges.extend((j, base + j) for j in range(k))
    return Graph.from_edges(k + d * (d + 1), edges)


FAMILIES = {
    "complete": complete_graph,
    "cycle": cycle_graph,
    "complete_bipartite": complete_bipartite_graph,
    "petersen": petersen_graph,
    "random_regular": random_regular_graph,
    "hd": extremal_graph,
}


def gen_named(family: str, **params) -> Graph:
    key = family.replace("-", "_").lower()
    if key not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    try:
        return FAMILIES[key](**params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {exc}") from None
