import pytest
from hypothesis import given, settings, strategies as st

from regtough.graph import (
    DuplicateEdgeError,
    Graph,
    GraphError,
    LoopError,
    MalformedLineError,
    VertexRangeError,
    complete_bipartite_graph,
    complete_graph,
    components,
    cycle_graph,
    degree_profile,
    dump_graph,
    extremal_graph,
    gen_named,
    load_graph,
    random_regular_graph,
    structural_flags,
)


def assert_simple(g: Graph):
    for u in range(g.n):
        assert u not in g.neighbors(u)
        for v in g.neighbors(u):
            assert u in g.neighbors(v)
    assert sum(g.degree(v) for v in range(g.n)) % 2 == 0


def test_load_single_edge():
    g = load_graph("2 1\n0 1")
    assert g.n == 2 and g.num_edges == 1
    assert list(g.edges()) == [(0, 1)]


def test_load_k4():
    g = load_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3")
    assert g == complete_graph(4)
    assert degree_profile(g) == (True, 3)


@pytest.mark.parametrize(
    "text, error",
    [
        ("3 1\n0 0", LoopError),
        ("3 1\n0 3", VertexRangeError),
        ("3 1\n0 -1", VertexRangeError),
        ("3 2\n0 1\n1 0", DuplicateEdgeError),
        ("3 1\n0 x", MalformedLineError),
        ("3 1\n0 1 2", MalformedLineError),
        ("3 2\n0 1", MalformedLineError),
        ("", MalformedLineError),
        ("three 1\n0 1", MalformedLineError),
    ],
)
def test_load_errors(text, error):
    with pytest.raises(error):
        load_graph(text)


def test_parse_errors_are_distinct():
    kinds = {LoopError, VertexRangeError, DuplicateEdgeError, MalformedLineError}
    assert len(kinds) == 4
    assert not any(issubclass(a, b) for a in kinds for b in kinds if a is not b)


def test_dump_roundtrip(petersen):
    text = dump_graph(petersen)
    assert text.startswith("10 15\n")
    assert load_graph(text) == petersen
    assert dump_graph(load_graph(text)) == text


def test_components_examples(k4, k33):
    assert components(k4, []) == [frozenset({0, 1, 2, 3})]
    assert components(cycle_graph(5), {0, 2}) == [frozenset({1}), frozenset({3, 4})]
    assert components(k33, {0, 1, 2}) == [frozenset({3}), frozenset({4}), frozenset({5})]
    assert components(k4, range(4)) == []


def _bfs_components(g, removed):
    rest = set(range(g.n)) - set(removed)
    comps = []
    while rest:
        root = min(rest)
        seen, stack = {root}, [root]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in rest and w not in seen:
                    seen.add(w)
                    stack.append(w)
        rest -= seen
        comps.append(frozenset(seen))
    return comps


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**30), st.sampled_from([(10, 3), (12, 4), (9, 4), (14, 3)]), st.data())
def test_components_match_bfs(seed, nd, data):
    n, d = nd
    g = random_regular_graph(n, d, seed)
    removed = data.draw(st.sets(st.integers(0, n - 1)))
    assert components(g, removed) == _bfs_components(g, removed)


def test_degree_profile(petersen):
    assert degree_profile(petersen) == (True, 3)
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert degree_profile(path) == (False, None)
    assert degree_profile(complete_graph(5)) == (True, 4)


def test_structural_flags(k33, k4):
    assert structural_flags(k33) == (True, True, False)
    assert structural_flags(k4) == (True, False, True)
    assert structural_flags(Graph.from_edges(4, [(0, 1), (2, 3)])) == (False, True, False)
    assert structural_flags(cycle_graph(5)) == (True, False, False)


def test_connected_iff_one_component(petersen):
    for g in (petersen, Graph.from_edges(4, [(0, 1), (2, 3)]), cycle_graph(7)):
        assert (len(components(g)) == 1) == structural_flags(g)[0]


def test_named_families():
    c5 = gen_named("cycle", n=5)
    assert degree_profile(c5) == (True, 2) and structural_flags(c5)[0]
    p = gen_named("petersen")
    assert (p.n, p.num_edges, degree_profile(p)) == (10, 15, (True, 3))
    g = gen_named("random-regular", n=12, d=3, seed=7)
    assert g.n == 12 and degree_profile(g) == (True, 3)
    assert_simple(g)
    assert gen_named("complete_bipartite", a=2, b=3) == complete_bipartite_graph(2, 3)


@pytest.mark.parametrize(
    "family, params",
    [
        ("random_regular", dict(n=7, d=3, seed=0)),
        ("random_regular", dict(n=4, d=4, seed=0)),
        ("cycle", dict(n=2)),
        ("nope", {}),
        ("petersen", dict(n=3)),
    ],
)
def test_named_family_errors(family, params):
    with pytest.raises(GraphError):
        gen_named(family, **params)


def test_pairing_model_gives_up():
    # the only 5-regular graph on 6 vertices is K_6, and simple pairings of it are rare
    with pytest.raises(GraphError, match="pairing model failed"):
        random_regular_graph(6, 5, seed=1, max_tries=1)


@pytest.mark.parametrize("seed", [0, 7, 2**63 + 5])
def test_random_regular_deterministic(seed):
    a = random_regular_graph(14, 3, seed)
    b = random_regular_graph(14, 3, seed)
    assert a == b and dump_graph(a) == dump_graph(b)


@pytest.mark.parametrize("d, k, n, m", [(3, 2, 14, 21), (4, 2, 22, 44), (5, 2, 32, 80), (5, 4, 34, 85)])
def test_extremal_graph_shape(d, k, n, m):
    g = extremal_graph(d, k)
    assert (g.n, g.num_edges) == (n, m)
    assert n == k + d * (d + 1)
    assert degree_profile(g) == (True, d)
    assert structural_flags(g)[0]
    assert_simple(g)
    # removing the k added vertices leaves the d copies
    parts = components(g, range(k))
    assert len(parts) == d
    assert all(len(p) == d + 1 for p in parts)
    assert all(not (g.neighbors(s) & set(range(k))) for s in range(k))


@pytest.mark.parametrize("d, k", [(3, 3), (3, 0), (4, 4), (2, 2), (5, 6)])
def test_extremal_graph_preconditions(d, k):
    with pytest.raises(GraphError):
        extremal_graph(d, k)


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(GraphError):
        Graph(2, (0b01, 0b00))
