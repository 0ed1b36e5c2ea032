"""The real-rooted polynomial family

    f(x) = prod_i (x - a_i) + sum_i b_i * prod_{j != i} (x - a_j)

with a_1 >= ... >= a_n >= 0 and every b_i > 0, which is the cofactor h(B, x)
of the characteristic polynomial of a cut quotient matrix.

Coefficients may be ``int``, ``float`` or ``Fraction``; with rational input
``eval_f`` is exact, which the tests use as an independent sign oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from numbers import Real
from typing import Sequence

from .graph import Graph, GraphError, degree_profile
from .spectra import cut_partition

BISECT_WIDTH = 1e-12
BISECT_MAX_ITER = 200


class PolySpecError(ValueError):
    pass


@dataclass(frozen=True)
class PolySpec:
    a: tuple[Real, ...]
    b: tuple[Real, ...]

    def __post_init__(self):
        a, b = tuple(self.a), tuple(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not a or len(a) != len(b):
            raise PolySpecError("a and b must be nonempty and of equal length")
        if any(x < y for x, y in zip(a, a[1:])):
            raise PolySpecError("a must be sorted in descending order")
        if a[-1] < 0:
            raise PolySpecError("a values must be nonnegative")
        if min(b) <= 0:
            raise PolySpecError("b values must be positive")

    @property
    def n(self) -> int:
        return len(self.a)

    def collapsed(self) -> tuple[PolySpec, tuple[int, ...]]:
        """Merge equal a-values: distinct c_1 > ... > c_r with summed weights.

        f equals prod (x - c_i)^(m_i - 1) times the collapsed polynomial, so
        the multiplicities m_i are returned alongside.
        """
        cs, bs, mult = [], [], []
        pairs = list(zip(self.a, self.b))
        for value, group in groupby(pairs, key=lambda ab: ab[0]):
            group = list(group)
            cs.append(value)
            bs.append(sum(b for _, b in group))
            mult.append(len(group))
        return PolySpec(tuple(cs), tuple(bs)), tuple(mult)

    def to_dict(self) -> dict:
        return {"a": [_jsonable(x) for x in self.a], "b": [_jsonable(x) for x in self.b]}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def eval_f(p: PolySpec, x):
    """Evaluate f in its defining product-sum form."""
    diffs = [x - ai for ai in p.a]
    total = math.prod(diffs)
    for i, bi in enumerate(p.b):
        total += bi * math.prod(diffs[:i] + diffs[i + 1:])
    return total


def eval_terms_scale(p: PolySpec, x: float) -> float:
    """Sum of absolute values of the n+1 defining terms at x (residual scale)."""
    diffs = [abs(float(x) - float(ai)) for ai in p.a]
    total = math.prod(diffs)
    for i, bi in enumerate(p.b):
        total += abs(float(bi)) * math.prod(diffs[:i] + diffs[i + 1:])
    return total


def _bisect(p: PolySpec, lo: float, hi: float, sign_lo: int) -> float:
    """Root of f in [lo, hi] given f changes sign there (sign at lo is ``sign_lo``)."""
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= BISECT_WIDTH * max(1.0, abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = eval_f(p, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (sign_lo > 0):
            lo = mid
        else:
            hi = mid
    flo, fhi = abs(eval_f(p, lo)), abs(eval_f(p, hi))
    return lo if flo < fhi else hi


def _distinct_roots(q: PolySpec) -> list[float]:
    """Roots of a collapsed spec (strictly decreasing a-values), descending.

    f(c_j) = b_j * prod_{i != j} (c_j - c_i) has sign (-1)^(j+1), so each
    interval (c_{j+1}, c_j) holds one root; the last root lies in
    [c_r - sum(b), c_r] where f has sign (-1)^r at the left end.
    """
    c = [float(x) for x in q.a]
    # floats are fine once the collapse has been done on the exact values
    fq = PolySpec(tuple(c), tuple(float(x) for x in q.b))
    roots = []
    for j in range(len(c) - 1):
        # sign at the left end c_{j+1} is (-1)^(j+1) with 0-based j -> index j+1
        sign_lo = -1 if (j + 1) % 2 else 1
        roots.append(_bisect(fq, c[j + 1], c[j], sign_lo))
    r = len(c)
    lo = c[-1] - float(sum(q.b))
    sign_lo = 1 if r % 2 == 0 else -1
    f_lo = eval_f(fq, lo)
    if f_lo == 0:
        roots.append(lo)
    else:
        roots.append(_bisect(fq, lo, c[-1], sign_lo))
    return roots


def all_roots(p: PolySpec) -> list[float]:
    """All n real roots of f, descending, with multiplicity."""
    q, mult = p.collapsed()
    roots = _distinct_roots(q)
    for value, m in zip(q.a, mult):
        roots.extend([float(value)] * (m - 1))
    return sorted(roots, reverse=True)


def largest_root(p: PolySpec) -> float:
    q, mult = p.collapsed()
    if mult[0] > 1:
        return float(q.a[0])
    if q.n == 1:
        return float(q.a[0]) - float(q.b[0])
    fq = PolySpec(tuple(float(x) for x in q.a), tuple(float(x) for x in q.b))
    return _bisect(fq, fq.a[1], fq.a[0], -1)


def lemma2_bounds(p: PolySpec):
    """Upper bound a_1 and the lower bounds (b_i a_1 + b_1 a_i) / (b_1 + b_i), i >= 2.

    The largest root lies in [max(lower), upper].
    """
    if p.n < 2:
        raise PolySpecError("bounds on the largest root need n >= 2")
    a1, b1 = p.a[0], p.b[0]
    lowers = [(bi * a1 + b1 * ai) / (b1 + bi) for ai, bi in zip(p.a[1:], p.b[1:])]
    return a1, lowers


def sign_pattern(p: PolySpec) -> list[int]:
    """Signs of the collapsed polynomial at c_1 > ... > c_r; alternates +, -, +, ..."""
    q, _ = p.collapsed()
    out = []
    for c in q.a:
        v = eval_f(q, c)
        out.append((v > 0) - (v < 0))
    return out


def certify_lemma2(p: PolySpec) -> bool:
    """Exact certificate that every lower bound from ``lemma2_bounds`` is <= rho.

    f(a_2) <= 0 and f -> +inf put a root at or above a_2. Above a_2 f has a
    single root, so a lower bound beyond a_2 is <= rho iff f is <= 0 there.
    Exact for rational a and b.
    """
    _, lowers = lemma2_bounds(p)
    a2 = p.a[1]
    if eval_f(p, a2) > 0:
        return False
    return all(lo <= a2 or eval_f(p, lo) <= 0 for lo in lowers)


def h_poly_from_cut(g: Graph, s: Sequence[int]) -> PolySpec:
    """The cofactor h(B, x) = f(x) of a cut quotient matrix, exactly.

    a_i = d - e_i/n_i and b_i = e_i/|S|, ordered by descending a_i (ties by
    component order). Values are Fractions so equal ratios collapse exactly.
    """
    regular, d = degree_profile(g)
    if not regular:
        raise GraphError("h(B, x) needs a regular graph")
    cp = cut_partition(g, s)
    pairs = [
        (Fraction(d) - Fraction(e, ni), Fraction(e, cp.cut_size))
        for e, ni in zip(cp.cut_edges, cp.component_sizes)
    ]
    if any(b <= 0 for _, b in pairs):
        raise GraphError("a component has no edge to the cut; graph is disconnected")
    pairs.sort(key=lambda ab: ab[0], reverse=True)
    return PolySpec(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


def random_polyspec(rng, n_max: int = 8, a_max: int = 10, b_den: int = 1000,
                    b_max: int = 5) -> PolySpec:
    """Random spec with integer a in [0, a_max] and rational b in (0, b_max]."""
    n = rng.randint(1, n_max)
    a = sorted((rng.randint(0, a_max) for _ in range(n)), reverse=True)
    b = [Fraction(rng.randint(1, b_max * b_den), b_den) for _ in range(n)]
    return PolySpec(tuple(a), tuple(b))
