"""Exact toughness t(G) = min |S| / c(G - S) over vertex cuts S."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import EXACT_VERTEX_CAP, Graph, GraphError, component_masks, members, structural_flags


class ToughnessUndefinedError(GraphError):
    """Raised for complete graphs, which have no vertex cut."""


@dataclass(frozen=True)
class ToughnessResult:
    value: Fraction
    witness: frozenset[int]
    components: int
    disconnected: bool = field(default=False)

    def to_dict(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "witness": sorted(self.witness),
            "components": self.components,
            "disconnected": self.disconnected,
        }


def _check_input(g: Graph) -> bool:
    """Validate and return whether g is connected."""
    if g.n > EXACT_VERTEX_CAP:
        raise GraphError(f"exact toughness is capped at {EXACT_VERTEX_CAP} vertices (n={g.n})")
    connected, _, complete = structural_flags(g)
    if complete and connected:
        raise ToughnessUndefinedError("complete graph has no vertex cut; toughness undefined")
    return connected


def _count_components_beyond(adj, alive: int, need: int) -> int:
    """Count components of the alive set, stopping early once ``need`` is unreachable.

    Returns the exact count when it reaches ``need``; otherwise any value < need.
    """
    count = 0
    while alive:
        if count + alive.bit_count() < need:
            return count
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
        alive &= ~comp
        count += 1
    return count


def _candidate_cuts(g: Graph, size: int):
    """Vertex subsets of the given size, in lexicographic order, that can minimise the ratio.

    A vertex of S with at most one neighbour outside S touches at most one
    component of G - S; dropping it from S gives a strictly smaller ratio.
    Hence every minimiser lets each member keep >= 2 neighbours outside S,
    i.e. at most deg(v) - 2 inside. The condition is monotone in S, so
    violating prefixes are cut off.
    """
    n, adj = g.n, g.adj
    slack = [row.bit_count() - 2 for row in adj]

    def extend(start: int, mask: int, k: int):
        if k == size:
            yield mask
            return
        for v in range(start, n - (size - k) + 1):
            if slack[v] < 0:
                continue
            inside = adj[v] & mask
            if inside.bit_count() > slack[v]:
                continue
            ok = True
            while inside:
                low = inside & -inside
                u = low.bit_length() - 1
                if (adj[u] & mask).bit_count() >= slack[u]:
                    ok = False
                    break
                inside ^= low
            if ok:
                yield from extend(v + 1, mask | (1 << v), k + 1)

    return extend(0, 0, 0)


def _search(g: Graph, bound: Fraction | None = None):
    """Pruned cut enumeration yielding (ratio, mask, c) for each strict improvement.

    Only cuts with ratio below ``bound`` (when given) are reported. Sizes
    ascend and subsets within a size come in lexicographic order, so the last
    triple is the minimum with the smallest, lexicographically first witness.
    """
    n, adj = g.n, g.adj
    full = (1 << n) - 1
    best = bound
    for s in range(1, n - 1):
        # a size-s cut leaves at most n - s components
        if best is not None and Fraction(s, n - s) >= best:
            break
        for mask in _candidate_cuts(g, s):
            # s / c < best  <=>  c > s / best; any cut has c >= 2
            need = 2 if best is None else max(2, s * best.denominator // best.numerator + 1)
            c = _count_components_beyond(adj, full & ~mask, need)
            if c >= need:
                best = Fraction(s, c)
                yield best, mask, c


def toughness_exact(g: Graph) -> ToughnessResult:
    connected = _check_input(g)
    if not connected:
        return ToughnessResult(Fraction(0), frozenset(), len(component_masks(g, (1 << g.n) - 1)), True)
    result = None
    for result in _search(g):
        pass
    if result is None:  # pragma: no cover - a connected non-complete graph has a cut
        raise GraphError("no vertex cut found")
    value, mask, c = result
    return ToughnessResult(value, members(mask), c)


def is_t_tough(g: Graph, t) -> bool:
    """True iff t(G) >= t; stops at the first cut with |S|/c(G-S) < t."""
    t = Fraction(t)
    connected = _check_input(g)
    if not connected:
        return t <= 0
    if t <= 0:
        return True
    for _ in _search(g, bound=t):
        return False
    return True


def toughness_naive(g: Graph) -> Fraction:
    """Unpruned oracle over all 2^n vertex subsets using set-based BFS."""
    if structural_flags(g)[2]:
        raise ToughnessUndefinedError("complete graph has no vertex cut; toughness undefined")
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    best = None
    for bits in range(1 << g.n):
        removed = {v for v in range(g.n) if bits >> v & 1}
        rest = set(range(g.n)) - removed
        c = 0
        while rest:
            stack = [rest.pop()]
            c += 1
            while stack:
                u = stack.pop()
                for w in nbrs[u] & rest:
                    rest.discard(w)
                    stack.append(w)
        if c >= 2:
            ratio = Fraction(len(removed), c)
            if best is None or ratio < best:
                best = ratio
    return best
