import random

import pytest
from hypothesis import given, settings

from hadlist.errors import BudgetExceeded, InvalidInput
from hadlist.gadgets import build_thm2, build_thm3, verify_thm2_certificate
from hadlist.graph import Graph
from hadlist.minors import MinorModel, find_kt_minor, verify_minor_model
from oracles import has_kt_minor_contract, has_kt_minor_naive
from strategies import graphs


def test_small_cases():
    assert find_kt_minor(Graph.complete(5), 5).t == 5
    assert find_kt_minor(Graph.complete(5), 6) is None
    assert find_kt_minor(Graph.cycle(7), 3) is not None
    assert find_kt_minor(Graph.cycle(7), 4) is None
    assert find_kt_minor(Graph(0, ()), 1) is None
    assert find_kt_minor(Graph.from_edges(2, []), 2) is None
    with pytest.raises(InvalidInput):
        find_kt_minor(Graph.complete(3), 0)


def test_petersen_hadwiger_number_is_5():
    p = Graph.petersen()
    model = find_kt_minor(p, 5)
    assert model is not None and verify_minor_model(p, model)[0]
    assert find_kt_minor(p, 6) is None


def test_wheel_has_k4_not_k5():
    w = Graph.wheel(6)
    assert find_kt_minor(w, 4) is not None
    assert find_kt_minor(w, 5) is None


def test_verify_minor_model_rejects_bad_models():
    g = Graph.path(4)
    assert not verify_minor_model(g, MinorModel.of([{0}, {2}]))[0]        # not adjacent
    assert not verify_minor_model(g, MinorModel.of([{0, 2}, {1}]))[0]     # disconnected
    assert not verify_minor_model(g, MinorModel.of([{0, 1}, {1, 2}]))[0]  # overlap
    assert verify_minor_model(g, MinorModel.of([{0, 1}, {2, 3}]))[0]


def test_budget_is_not_a_negative_answer():
    rnd = random.Random(0)
    g = Graph.from_edges(16, [(u, v) for u in range(16) for v in range(u + 1, 16)
                              if rnd.random() < 0.5])
    with pytest.raises(BudgetExceeded):
        find_kt_minor(g, 9, budget=5)


def test_gadgets_are_minor_free_at_threshold():
    assert find_kt_minor(build_thm2(0, 52).graph, 52) is None
    assert find_kt_minor(build_thm3(0, 48).graph, 48) is None
    assert find_kt_minor(build_thm2(0, 52).graph, 51) is not None


@pytest.mark.parametrize("t", range(8, 12))
def test_certificate_agrees_with_exact_search(t):
    # out-of-regime gadgets are small enough for the contraction oracle
    g = build_thm2(0, t)
    truth = has_kt_minor_contract(g.graph.n, list(g.graph.edges()), t)
    assert (find_kt_minor(g.graph, t) is not None) == truth
    if verify_thm2_certificate(g).ok:
        assert not truth


@settings(max_examples=150, deadline=None)
@given(graphs(0, 7))
def test_matches_naive_enumerator(g):
    edges = list(g.edges())
    for t in range(1, 6):
        model = find_kt_minor(g, t)
        assert (model is not None) == has_kt_minor_naive(g.n, edges, t)
        if model is not None:
            assert verify_minor_model(g, model)[0]


@settings(max_examples=60, deadline=None)
@given(graphs(6, 10))
def test_matches_contraction_oracle_near_n(g):
    for t in (g.n - 2, g.n - 1):
        assert (find_kt_minor(g, t) is not None) == has_kt_minor_contract(g.n, list(g.edges()), t)
