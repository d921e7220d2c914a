import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadlist.errors import InvalidInput
from hadlist.graph import Graph, bits, clique_sum, is_clique, to_mask
from hadlist.minors import find_kt_minor
from strategies import graphs


def test_from_edges_rejects_bad_input():
    with pytest.raises(InvalidInput):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(InvalidInput):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(InvalidInput):
        Graph.from_edges(2000, [])
    assert Graph.from_edges(2000, [], max_vertices=2000).n == 2000


def test_asymmetric_adjacency_rejected():
    with pytest.raises(InvalidInput):
        Graph(2, (0b10, 0))


def test_families():
    assert Graph.complete(5).m == 10
    assert Graph.cycle(6).m == 6
    assert Graph.path(4).m == 3
    w = Graph.wheel(4)
    assert w.n == 5 and w.m == 8
    p = Graph.petersen()
    assert p.n == 10 and p.m == 15 and all(p.degree(v) == 3 for v in range(10))


def test_induced_and_components():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    comps = sorted(sorted(bits(c)) for c in g.components())
    assert comps == [[0, 1, 2], [3, 4], [5]]
    sub, old = g.induced([4, 3, 1])
    assert old == [4, 3, 1] and sub.m == 1


def test_is_clique():
    g = Graph.complete(4)
    assert is_clique(g, [0, 2, 3])
    assert not is_clique(Graph.cycle(4), [0, 1, 2])
    with pytest.raises(InvalidInput):
        is_clique(g, [7])


def test_clique_sum_thm2_A_is_clique():
    from hadlist.gadgets import build_thm2
    g = build_thm2(0, 52)
    assert is_clique(g.graph, g.A)


def test_clique_sum_glues_and_drops():
    k4 = Graph.complete(4)
    cs = clique_sum(k4, [0, 1, 2], k4, [3, 2, 1], drop=[(0, 1)])
    assert cs.graph.n == 5
    assert not cs.graph.has_edge(0, 1)
    assert cs.map2 == (4, 2, 1, 0)
    with pytest.raises(InvalidInput):
        clique_sum(k4, [0, 1], Graph.path(3), [0, 2])
    with pytest.raises(InvalidInput):
        clique_sum(k4, [0, 1], k4, [0, 1], drop=[(0, 3)])


@settings(max_examples=100, deadline=None)
@given(graphs(1, 6), graphs(1, 6), st.integers(0, 3), st.randoms(use_true_random=False))
def test_clique_sum_preserves_minor_freeness(g1, g2, size, rnd):
    """If both sides lack a K_t minor, so does any clique-sum of them."""
    def pick_clique(g):
        verts = list(range(g.n))
        rnd.shuffle(verts)
        out = []
        for v in verts:
            if len(out) < size and all(g.has_edge(v, u) for u in out):
                out.append(v)
        return out
    c1, c2 = pick_clique(g1), pick_clique(g2)
    k = min(len(c1), len(c2))
    c1, c2 = c1[:k], c2[:k]
    cs = clique_sum(g1, c1, g2, c2)
    for t in range(3, 6):
        if find_kt_minor(g1, t) is None and find_kt_minor(g2, t) is None:
            assert find_kt_minor(cs.graph, t) is None


@given(st.sets(st.integers(0, 200)))
def test_mask_round_trip(vs):
    assert set(bits(to_mask(vs))) == vs
