from fractions import Fraction

import pytest

from hadlist.errors import InvalidInput
from hadlist.steiner import (complete_join, cyclic_instance, matching_deleted_join,
                             sample_steiner, steiner_t, verify_steiner)


def _check(h, budget=None):
    return verify_steiner(h.graph, h.A, h.B, h.n, h.eps, budget=budget)


def test_threshold():
    assert steiner_t(4, Fraction(1, 4)) == 6
    assert steiner_t(5, Fraction(1, 3)) == 9


def test_matching_deleted_join():
    for n in (2, 3):
        assert _check(matching_deleted_join(n))["verdict"] == "pass"
    # K_8 minus a perfect matching is K_{2,2,2,2}, which has a K_6 minor
    rep = _check(matching_deleted_join(4))
    assert rep["max_non_neighbours"] == 1 and rep["t"] == 6 and rep["minor"] == "fail"
    h = matching_deleted_join(4).graph
    sets = [set(z) for z in rep["model"]]
    assert all(any(h.has_edge(u, v) for u in x for v in y)
               for i, x in enumerate(sets) for y in sets[i + 1:])


def test_complete_join_fails_with_a_model():
    h = complete_join(4, Fraction(1, 2))
    rep = _check(h)
    assert rep["minor"] == "fail" and rep["verdict"] == "fail"
    sets = [set(z) for z in rep["model"]]
    assert len(sets) == 8 and sum(map(len, sets)) <= 8


def test_cyclic_instance_passes():
    rep = _check(cyclic_instance(6, 2))
    assert rep["verdict"] == "pass" and rep["t"] == 10


def test_too_many_non_neighbours_fails():
    h = cyclic_instance(5, 2, Fraction(1, 5))
    rep = _check(h)
    assert rep["non_neighbours"] == "fail" and rep["verdict"] == "fail"


def test_size_mismatch_is_invalid():
    h = matching_deleted_join(3)
    with pytest.raises(InvalidInput):
        verify_steiner(h.graph, h.A[:2], h.B, 3, h.eps)
    with pytest.raises(InvalidInput):
        verify_steiner(h.graph, h.A, h.B, 4, h.eps)
    with pytest.raises(InvalidInput):
        cyclic_instance(3, 4)


def test_sampler_is_reproducible():
    a = sample_steiner(5, Fraction(2, 5), seed=11, budget=50)
    b = sample_steiner(5, Fraction(2, 5), seed=11, budget=50)
    assert a is not None and a == b
    assert a.verified_minor_free_up_to == a.t
    assert _check(a)["verdict"] == "pass"


def test_sampler_with_zero_eps_finds_nothing():
    # with no non-edges the graph is K_2n, which contains K_2n
    assert sample_steiner(4, 0, seed=1, budget=5) is None
