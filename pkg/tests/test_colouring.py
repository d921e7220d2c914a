import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadlist.colouring import (ListAssignment, clique_sdr, find_bfold, find_coloring,
                               fold_colourings, is_valid_assignment, proper_colourings)
from hadlist.errors import CapExceeded, InvalidInput
from hadlist.graph import Graph
from hadlist.lambdas import ColourClasses, Lambda
from oracles import (bfold_colourable_naive, list_colourable_naive, proper_colourings_naive,
                     sdr_exists_naive)
from strategies import graphs_with_lists


def test_valid_assignment_reports_first_violation():
    g = Graph.complete(2)
    lam = Lambda.of(2, 1)
    cls = ColourClasses.of([{0, 1, 2}, {5}])
    ok = ListAssignment.of([{0, 1, 5}, {1, 2, 5}])
    assert is_valid_assignment(g, ok, lam, cls)
    bad = ListAssignment.of([{0, 1, 5}, {1, 5}])
    rep = is_valid_assignment(g, bad, lam, cls)
    assert not rep and rep.vertex == 1 and rep.class_index == 0
    with pytest.raises(InvalidInput):
        is_valid_assignment(g, ok, Lambda.of(3), cls)


def test_k4_with_three_colours_is_not_colourable():
    g = Graph.complete(4)
    assert find_coloring(g, ListAssignment.uniform(4, {1, 2, 3})) is None
    assert find_coloring(g, ListAssignment.uniform(4, {1, 2, 3, 4})) is not None


def test_hall_violator_on_pigeonhole():
    res = clique_sdr([{1, 2}, {1, 2}, {1, 2}, {3, 4}])
    assert not res.ok
    assert res.hall_violator == {0, 1, 2} and res.violator_pool == {1, 2}


def test_partial_must_be_consistent():
    g = Graph.path(3)
    l = ListAssignment.uniform(3, {1, 2})
    with pytest.raises(InvalidInput):
        find_coloring(g, l, {0: 3})
    with pytest.raises(InvalidInput):
        find_coloring(g, l, {0: 1, 1: 1})
    assert find_coloring(g, l, {0: 2}) == {0: 2, 1: 1, 2: 2}


@settings(max_examples=200, deadline=None)
@given(graphs_with_lists())
def test_find_coloring_matches_naive(case):
    g, lists = case
    l = ListAssignment.of(lists)
    col = find_coloring(g, l)
    assert (col is not None) == list_colourable_naive(g.n, list(g.edges()), lists)
    if col is not None:
        assert all(col[v] in lists[v] for v in range(g.n))
        assert all(col[u] != col[v] for u, v in g.edges())


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sets(st.integers(0, 6), max_size=4), min_size=1, max_size=7))
def test_clique_sdr_matches_naive(lists):
    res = clique_sdr(lists)
    assert res.ok == sdr_exists_naive(lists)
    if res.ok:
        assert len(set(res.reps)) == len(lists)
        assert all(r in l for r, l in zip(res.reps, lists))
    else:
        members = [lists[i] for i in res.hall_violator]
        assert set().union(*members) == res.violator_pool
        assert len(res.hall_violator) > len(res.violator_pool)


def test_clique_solver_agrees_with_sdr():
    rnd = random.Random(7)
    for _ in range(300):
        n = rnd.randint(1, 7)
        lists = [set(rnd.sample(range(8), rnd.randint(1, 4))) for _ in range(n)]
        col = find_coloring(Graph.complete(n), ListAssignment.of(lists))
        assert (col is not None) == clique_sdr(lists).ok


@settings(max_examples=200, deadline=None)
@given(graphs_with_lists(max_n=6, max_colour=4, max_len=4))
def test_bfold_with_b1_matches_find_coloring(case):
    g, lists = case
    l = ListAssignment.of(lists)
    assert (find_bfold(g, l, 1) is not None) == (find_coloring(g, l) is not None)


@settings(max_examples=100, deadline=None)
@given(graphs_with_lists(max_n=5, max_colour=5, max_len=5), st.integers(1, 2))
def test_bfold_matches_naive(case, b):
    g, lists = case
    l = ListAssignment.of(lists)
    res = find_bfold(g, l, b)
    expected = all(len(x) >= b for x in lists) and bfold_colourable_naive(g.n, list(g.edges()), lists, b)
    assert (res is not None) == expected
    if res is not None:
        assert res.is_valid(g, l)


def test_bfold_errors_and_short_lists():
    g = Graph.complete(2)
    l = ListAssignment.uniform(2, {1, 2, 3})
    with pytest.raises(InvalidInput):
        find_bfold(g, l, 0)
    with pytest.raises(InvalidInput):
        find_bfold(g, l, 2, {0: {1}})
    assert find_bfold(g, ListAssignment.uniform(2, {1}), 2) is None
    assert find_bfold(g, ListAssignment.uniform(2, {1, 2, 3, 4}), 2) is not None


@settings(max_examples=100, deadline=None)
@given(graphs_with_lists(max_n=5))
def test_proper_colourings_enumerates_in_order(case):
    g, lists = case
    got = list(proper_colourings(g, ListAssignment.of(lists)))
    assert got == proper_colourings_naive(g.n, list(g.edges()), lists)


def test_enumeration_caps():
    g = Graph.from_edges(4, [])
    l = ListAssignment.uniform(4, {1, 2, 3})
    with pytest.raises(CapExceeded):
        list(proper_colourings(g, l, cap=10))
    assert len(list(fold_colourings(Graph.complete(2), ListAssignment.uniform(2, range(1, 8)), 2))) == 210


@settings(max_examples=100, deadline=None)
@given(graphs_with_lists(max_n=5, max_colour=3, max_len=4), st.data())
def test_validity_is_monotone_under_deletion(case, data):
    g, lists = case
    lam = Lambda.of(1, 1)
    cls = ColourClasses.of([{0, 1}, {2, 3}])
    l = ListAssignment.of(lists)
    before = bool(is_valid_assignment(g, l, lam, cls))
    v = data.draw(st.integers(0, g.n - 1))
    if lists[v]:
        c = data.draw(st.sampled_from(sorted(lists[v])))
        smaller = list(lists)
        smaller[v] = lists[v] - {c}
        after = bool(is_valid_assignment(g, ListAssignment.of(smaller), lam, cls))
        assert not (after and not before)
