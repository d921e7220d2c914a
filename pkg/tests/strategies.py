"""Hypothesis strategies shared by the test modules."""
from itertools import combinations

from hypothesis import strategies as st

from hadlist.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def graphs_with_lists(draw, max_n=6, max_colour=4, max_len=3):
    g = draw(graphs(1, max_n))
    lists = [frozenset(draw(st.sets(st.integers(0, max_colour), min_size=1, max_size=max_len)))
             for _ in range(g.n)]
    return g, lists
