import math
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from regtough.graph import GraphError, Graph, cycle_graph, extremal_graph, random_regular_graph, structural_flags
from regtough.polyroots import (
    PolySpec,
    PolySpecError,
    all_roots,
    certify_lemma2,
    eval_f,
    eval_terms_scale,
    h_poly_from_cut,
    largest_root,
    lemma2_bounds,
    random_polyspec,
    sign_pattern,
)
from regtough.spectra import cut_partition, quotient_matrix, quotient_spectrum

SQRT2 = math.sqrt(2)


X = sp.symbols("x")


def expanded_roots(p: PolySpec) -> list[float]:
    """Independent route: exact expansion and real-root isolation in sympy."""
    q = lambda v: sp.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else sp.Integer(v)
    a = [q(v) for v in p.a]
    expr = sp.prod([X - v for v in a])
    for i, b in enumerate(p.b):
        expr += q(b) * sp.prod([X - v for j, v in enumerate(a) if j != i])
    roots = sp.Poly(sp.expand(expr), X).real_roots()
    assert len(roots) == p.n
    return sorted((float(r.evalf(30)) for r in roots), reverse=True)


specs = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 10), min_size=n, max_size=n),
        st.lists(st.integers(1, 5000), min_size=n, max_size=n),
    )
).map(lambda ab: PolySpec(tuple(sorted(ab[0], reverse=True)), tuple(Fraction(b, 1000) for b in ab[1])))


# ---------------------------------------------------------------------------
# evaluation

def test_eval_examples():
    p = PolySpec((2, 0), (1, 1))
    assert eval_f(p, 0) == -2
    assert eval_f(p, 2) == 2
    assert eval_f(PolySpec((0,), (5,)), 0) == 5


def test_eval_matches_expansion():
    p = PolySpec((2, 0), (1, 1))  # x^2 - 2
    for x in (-3, -1.5, 0.25, 7):
        assert eval_f(p, x) == pytest.approx(x * x - 2)


@pytest.mark.parametrize(
    "a, b",
    [((), ()), ((1, 2), (1, 1)), ((1, -1), (1, 1)), ((1, 0), (1, 0)), ((1,), (1, 2))],
)
def test_polyspec_validation(a, b):
    with pytest.raises(PolySpecError):
        PolySpec(a, b)


def test_collapse():
    q, mult = PolySpec((3, 3, 1, 0, 0, 0), (1, 2, 3, 4, 5, 6)).collapsed()
    assert q == PolySpec((3, 1, 0), (3, 3, 15))
    assert mult == (2, 1, 3)


@given(specs, st.floats(-20, 20))
def test_collapse_factorisation(p, x):
    q, mult = p.collapsed()
    x = Fraction(x)
    rhs = eval_f(q, x) * math.prod((x - c) ** (m - 1) for c, m in zip(q.a, mult))
    assert eval_f(p, x) == rhs


# ---------------------------------------------------------------------------
# roots

def test_roots_examples():
    assert all_roots(PolySpec((2, 0), (1, 1))) == pytest.approx([SQRT2, -SQRT2], abs=1e-10)
    assert all_roots(PolySpec((0, 0, 0), (1, 1, 1))) == pytest.approx([0, 0, -3], abs=1e-10)
    assert all_roots(PolySpec((1, 1), (1, 1))) == pytest.approx([1, -1], abs=1e-10)
    assert all_roots(PolySpec((3, 2, 0), (1, 1, 1))) == pytest.approx(expanded_roots(PolySpec((3, 2, 0), (1, 1, 1))), abs=1e-9)


def test_largest_root_examples():
    assert largest_root(PolySpec((2, 0), (1, 1))) == pytest.approx(SQRT2, abs=1e-10)
    assert largest_root(PolySpec((0, 0, 0), (1, 1, 1))) == 0
    assert largest_root(PolySpec((5,), (2,))) == 3
    assert largest_root(PolySpec((4, 4), (3, 1))) == 4


def test_lemma2_examples():
    assert lemma2_bounds(PolySpec((2, 0), (1, 1))) == (2, [1])
    assert lemma2_bounds(PolySpec((0, 0, 0), (1, 1, 1))) == (0, [0, 0])
    up, lows = lemma2_bounds(PolySpec((4, 4), (3, 1)))
    assert (up, lows) == (4, [4])
    assert all_roots(PolySpec((4, 4), (3, 1))) == [4.0, 0.0]
    with pytest.raises(PolySpecError):
        lemma2_bounds(PolySpec((1,), (1,)))


@settings(max_examples=300, deadline=None)
@given(specs)
def test_real_rootedness(p):
    roots = all_roots(p)
    assert len(roots) == p.n
    for r in roots:
        assert abs(eval_f(p, r)) <= 1e-8 * max(1.0, eval_terms_scale(p, r))
    assert sum(roots) == pytest.approx(float(sum(p.a) - sum(p.b)), abs=1e-8)
    assert roots == pytest.approx(expanded_roots(p), abs=1e-7)


@settings(max_examples=300, deadline=None)
@given(specs)
def test_largest_root_bracket(p):
    rho = largest_root(p)
    assert rho == max(all_roots(p))
    assert rho <= p.a[0] + 1e-10
    if p.n >= 2:
        _, lowers = lemma2_bounds(p)
        assert rho >= float(max(lowers)) - 1e-10
        assert rho >= p.a[1] - 1e-10
        assert certify_lemma2(p)


@settings(max_examples=200, deadline=None)
@given(specs)
def test_sign_alternation(p):
    assert sign_pattern(p) == [1 if j % 2 == 0 else -1 for j in range(p.collapsed()[0].n)]
    # the uncollapsed f vanishes exactly at the repeated a-values
    q, mult = p.collapsed()
    for c, m in zip(q.a, mult):
        assert (eval_f(p, c) == 0) == (m > 1)


def test_lemma2_certificate():
    p = PolySpec((3, 2, 0), (1, 1, 1))
    assert certify_lemma2(p)
    # a lower bound placed above rho is refuted by the sign of f
    rho = largest_root(p)
    assert eval_f(p, Fraction(rho) + Fraction(1, 100)) > 0


def test_duplicate_heavy_instances():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 8)
        a = sorted((rng.randint(0, 1) for _ in range(n)), reverse=True)
        p = PolySpec(a, [Fraction(rng.randint(1, 500), 100) for _ in range(n)])
        roots = all_roots(p)
        assert len(roots) == n
        assert sum(roots) == pytest.approx(float(sum(p.a) - sum(p.b)), abs=1e-8)


def test_random_polyspec_shape():
    rng = random.Random(0)
    for _ in range(50):
        p = random_polyspec(rng)
        assert 1 <= p.n <= 8
        assert all(0 <= a <= 10 for a in p.a)
        assert all(0 < b <= 5 for b in p.b)


# ---------------------------------------------------------------------------
# cut polynomials

def test_h_poly_examples(k33, h3):
    assert h_poly_from_cut(k33, {0, 1, 2}) == PolySpec((0, 0, 0), (1, 1, 1))
    c4 = cycle_graph(4)
    # d=2, e=(2,2), n=(1,1): a_i = 2 - 2/1 = 0
    assert h_poly_from_cut(c4, {0, 2}) == PolySpec((0, 0), (1, 1))
    assert h_poly_from_cut(h3, {0, 1}) == PolySpec((Fraction(5, 2),) * 3, (1, 1, 1))


def test_h_poly_needs_regular_graph():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(GraphError):
        h_poly_from_cut(g, {1})


@pytest.mark.parametrize("seed", range(25))
def test_rho_equals_quotient_lambda2(seed):
    rng = random.Random(seed)
    d = rng.choice([3, 4])
    n = rng.choice([10, 12, 14])
    g = random_regular_graph(n, d, seed)
    if not structural_flags(g)[0]:
        pytest.skip("disconnected sample")
    while True:
        s = rng.sample(range(n), rng.randint(1, n - 2))
        try:
            cp = cut_partition(g, s)
            break
        except GraphError:
            continue
    p = h_poly_from_cut(g, s)
    lam2_b = quotient_spectrum(quotient_matrix(g, cp)).lambda2
    assert largest_root(p) == pytest.approx(lam2_b, abs=1e-7)


def test_extremal_cut_polynomial(h3):
    p = h_poly_from_cut(h3, {0, 1})
    # a = 5/2 with multiplicity 3 collapses to one factor with weight 3
    assert all_roots(p) == pytest.approx([2.5, 2.5, -0.5])
    assert largest_root(p) == 2.5
