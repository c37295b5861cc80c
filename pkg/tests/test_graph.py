import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from signedtri.graph import (
    GraphValidationError,
    SignedGraph,
    TriangleCounts,
    UndefinedBalanceError,
    balance_exact,
    count_triangles_exact,
    count_triangles_unsigned,
    flip_signs,
    generate_er_signed,
    graph_params,
    make_graph,
    max_t1_per_edge,
)


def _nx_counts(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for u, v, s in g.edges:
        G.add_edge(u, v, sign=s)
    c = [0, 0, 0, 0]
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) == 3:
            a, b, d = clique
            pos = sum(G[x][y]["sign"] > 0 for x, y in ((a, b), (a, d), (b, d)))
            c[pos] += 1
        elif len(clique) > 3:
            break
    return tuple(c)


def test_validation_errors():
    with pytest.raises(GraphValidationError):
        make_graph(3, [(0, 0, 1)])
    with pytest.raises(GraphValidationError):
        make_graph(3, [(0, 3, 1)])
    with pytest.raises(GraphValidationError):
        make_graph(3, [(0, 1, 2)])
    with pytest.raises(GraphValidationError):
        make_graph(3, [(0, 1, 1), (1, 0, -1)])
    with pytest.raises(GraphValidationError):
        SignedGraph(3, ((1, 0, 1),))


def test_make_graph_canonicalizes():
    g = make_graph(4, [(2, 1, -1), (3, 0, 1)])
    assert g.edges == ((0, 3, 1), (1, 2, -1))
    assert g.count_signs() == (1, 1)


def test_single_triangles():
    for signs, j in (((-1, -1, -1), 0), ((1, -1, -1), 1), ((1, 1, -1), 2), ((1, 1, 1), 3)):
        g = make_graph(3, [(0, 1, signs[0]), (0, 2, signs[1]), (1, 2, signs[2])])
        c = count_triangles_exact(g)
        assert c.total == 1 and c[j] == 1


def test_k4_all_positive():
    g = make_graph(4, [(a, b, 1) for a in range(4) for b in range(a + 1, 4)])
    assert count_triangles_exact(g) == TriangleCounts(0, 0, 0, 4)
    p = graph_params(g)
    assert (p.delta_e, p.delta_v) == (2, 3)


def test_fixture_counts(fixture_stream):
    c = count_triangles_exact(fixture_stream.to_graph())
    assert c.as_tuple() == (215, 676, 557, 147)
    assert round(balance_exact(c), 3) == 0.516


def test_undefined_balance():
    with pytest.raises(UndefinedBalanceError):
        balance_exact(TriangleCounts(0, 0, 0, 0))
    with pytest.raises(ZeroDivisionError):
        balance_exact(count_triangles_exact(make_graph(4, [(0, 1, 1), (2, 3, 1)])))


def test_flip_symmetry_fixture(fixture_stream):
    c = count_triangles_exact(flip_signs(fixture_stream.to_graph()))
    assert c.as_tuple() == (147, 557, 676, 215)


def test_er_is_seeded():
    assert generate_er_signed(20, 0.3, 0.5, 1) == generate_er_signed(20, 0.3, 0.5, 1)
    assert generate_er_signed(20, 0.3, 0.5, 1) != generate_er_signed(20, 0.3, 0.5, 2)
    assert generate_er_signed(10, 0.0, 0.5, 1).m == 0
    assert generate_er_signed(10, 1.0, 1.0, 1).count_signs() == (45, 0)
    with pytest.raises(ValueError):
        generate_er_signed(10, 1.5, 0.5, 1)


def test_er_density():
    g = generate_er_signed(200, 0.1, 0.25, 3)
    pairs = 200 * 199 // 2
    assert abs(g.m / pairs - 0.1) < 0.01
    pos, _ = g.count_signs()
    assert abs(pos / g.m - 0.25) < 0.03


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 11), st.floats(0, 1), st.floats(0, 1), st.integers(0, 10**6))
def test_counts_match_networkx(n, pe, pp, seed):
    g = generate_er_signed(n, pe, pp, seed)
    c = count_triangles_exact(g)
    assert c.as_tuple() == _nx_counts(g)
    assert c.total == count_triangles_unsigned(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 10), st.floats(0.2, 1), st.floats(0, 1), st.integers(0, 10**6))
def test_flip_reverses_counts(n, pe, pp, seed):
    g = generate_er_signed(n, pe, pp, seed)
    c = count_triangles_exact(g).as_tuple()
    assert count_triangles_exact(flip_signs(g)).as_tuple() == c[::-1]


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10**6))
def test_switching_preserves_balance(n, seed):
    # negating every edge that crosses a vertex cut keeps each triangle's sign product
    g = generate_er_signed(n, 0.7, 0.5, seed)
    side = np.random.default_rng(seed).random(n) < 0.5
    sw = make_graph(n, [(u, v, -s if side[u] != side[v] else s) for u, v, s in g.edges])
    a, b = count_triangles_exact(g), count_triangles_exact(sw)
    assert a.total == b.total and a.balanced == b.balanced


def test_balanced_fixtures():
    # two all-positive cliques joined by negative edges are perfectly balanced
    n = 6
    grp = [0, 0, 0, 1, 1, 1]
    g = make_graph(n, [(u, v, 1 if grp[u] == grp[v] else -1) for u in range(n) for v in range(u + 1, n)])
    assert balance_exact(count_triangles_exact(g)) == 1.0
    assert balance_exact(count_triangles_exact(make_graph(3, [(0, 1, -1), (0, 2, -1), (1, 2, -1)]))) == 0.0


def test_param_bounds():
    g = generate_er_signed(15, 0.6, 0.5, 8)
    p = graph_params(g)
    c = count_triangles_exact(g)
    assert p.delta_e <= p.delta_v <= c.total
    assert max_t1_per_edge(g) <= p.delta_e
    assert p.delta_e <= g.n - 2
