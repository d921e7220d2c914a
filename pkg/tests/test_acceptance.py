"""The ten acceptance criteria, each with its runtime limit. One PASS/FAIL
line per criterion is printed in the terminal summary (and to stdout)."""
import random
import time
from itertools import combinations, permutations

import networkx as nx
import pytest

from hadlist.choosability import lambda_choosable_small
from hadlist.colouring import (ListAssignment, find_bfold, find_coloring,
                               is_valid_assignment)
from hadlist.gadgets import (build_ab, build_thm2, build_thm3, build_thmkq,
                             canonical_psi_thm2, extension_sdr, pattern_clique_thm2,
                             pattern_clique_thm3, thm2_lists, thm3_domain, thm3_lists,
                             verify_copies, verify_thm2_certificate,
                             verify_thm3_certificate)
from hadlist.graph import Graph
from hadlist.lambdas import Lambda, leq_order
from hadlist.minors import find_kt_minor
from hadlist.obstacles import compose, triangle_toy_family
from hadlist.steiner import (complete_join, cyclic_instance, matching_deleted_join,
                             verify_steiner)
from oracles import (has_kt_minor_contract, has_kt_minor_naive, integer_partitions,
                     list_colourable_naive)


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.limit, f"took {elapsed:.1f}s, limit {self.limit}s"
        return elapsed


def report(number, ok_text):
    print(f"criterion {number}: PASS {ok_text}")


@pytest.mark.criterion(1, "minor search matches the naive enumerator (n <= 7, t <= 5)")
def test_c1_minor_oracle_equivalence():
    clock = Clock(300)
    cases = 0
    for n in range(0, 6):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
            g = Graph.from_edges(n, edges)
            for t in range(1, 6):
                model = find_kt_minor(g, t)
                assert (model is not None) == has_kt_minor_naive(n, edges, t), (n, edges, t)
                cases += 1
    rng = random.Random(1)
    for n in (6, 7):
        pairs = list(combinations(range(n), 2))
        for _ in range(500):
            p = rng.random()
            edges = [e for e in pairs if rng.random() < p]
            g = Graph.from_edges(n, edges)
            for t in range(1, 6):
                model = find_kt_minor(g, t)
                assert (model is not None) == has_kt_minor_naive(n, edges, t), (n, edges, t)
                cases += 1
    report(1, f"{cases} (graph, t) cases agree in {clock.check():.1f}s")


@pytest.mark.criterion(2, "single-class gadget a=0, t=52 has no K_52 minor; certificate 50 < 51")
def test_c2_claim1_exact():
    clock = Clock(600)
    g = build_thm2(0, 52)
    assert g.graph.n == 55
    assert find_kt_minor(g.graph, 52) is None
    cert = verify_thm2_certificate(g)
    assert cert.ok and cert.lhs == 50 and cert.rhs == 51
    report(2, f"exact search and certificate ({cert.reason}) in {clock.check():.1f}s")


@pytest.mark.criterion(3, "50 random injections into the a-colours fail with a 50-over-49 Hall violator")
def test_c3_claim2_extension():
    clock = Clock(60)
    g = build_thm2(0, 52)
    rng = random.Random(3)
    a_cols = list(g.palette.a)
    for _ in range(50):
        psi = dict(zip(g.A, rng.sample(a_cols, len(g.A))))
        lists, lam, classes = thm2_lists(g, psi)
        assert is_valid_assignment(g.graph, lists, lam, classes)
        res = extension_sdr(g.graph, lists, psi, g.B)
        assert not res.ok
        assert len(res.hall_violator) == 50 and len(res.violator_pool) == 49
        assert find_coloring(g.graph, lists, psi) is None
    report(3, f"50/50 blocked in {clock.check():.1f}s")


@pytest.mark.criterion(4, "triple gadget a=0, t=48: no K_48 minor, certificate, pool 44 < 45")
def test_c4_claims3_4():
    clock = Clock(600)
    g = build_thm3(0, 48)
    assert g.graph.n == 51 and g.m == 9 and len(g.B) == 45
    assert find_kt_minor(g.graph, 48) is None
    assert verify_thm3_certificate(g).ok
    for psi in thm3_domain(g):
        mp = dict(zip(g.A, psi))
        lists, lam, classes = thm3_lists(g, mp)
        assert is_valid_assignment(g.graph, lists, lam, classes)
        res = extension_sdr(g.graph, lists, mp, g.B)
        assert not res.ok and len(res.violator_pool) == 44 and len(res.hall_violator) == 45
        assert find_coloring(g.graph, lists, mp) is None
    report(4, f"exact search, certificate and all 6 triple colourings in {clock.check():.1f}s")


@pytest.mark.criterion(5, "pattern selectors succeed on random colourings; 5a+7 boundary defeats thm3")
def test_c5_selectors():
    clock = Clock(60)
    rng = random.Random(5)
    g2 = build_thm2(0, 52)
    cols2 = list(g2.palette.b) + list(g2.palette.a)
    a_set = set(g2.palette.a)
    for _ in range(100):
        psi = rng.sample(cols2, 51)
        k = pattern_clique_thm2(psi, g2.palette.a, 0)
        assert k is not None and len(k) == 5 and all(psi[v] in a_set for v in k)
    g3 = build_thm3(0, 48)
    d = g3.palette.d
    cols3 = list(g3.palette.b) + [c for tr in d for c in tr]
    for _ in range(100):
        psi = rng.sample(cols3, 47)
        k = pattern_clique_thm3(psi, d, 0)
        assert k is not None and len(k) == 6
        trip = [tuple(psi[v] for v in k[i:i + 3]) for i in (0, 3)]
        assert all(t in d for t in trip) and trip[0] != trip[1]
    # boundary: one full triple plus two pairs is 5a+7 = 7 d-coloured vertices
    boundary = list(g3.palette.b) + list(d[0]) + list(d[1][:2]) + list(d[2][:2])
    assert len(boundary) == 46
    assert pattern_clique_thm3(boundary, d, 0) is None
    # any 8 of the 9 d-colours contain two full triples
    all_d = [c for tr in d for c in tr]
    for eight in combinations(all_d, 8):
        assert pattern_clique_thm3(list(eight), d, 0) is not None
    report(5, f"200 random colourings and the boundary in {clock.check():.1f}s")


@pytest.mark.criterion(6, "toy composition is non-colourable; deleting any copy restores colourability")
def test_c6_compose_toy():
    clock = Clock(60)
    fam, h2, l2, select = triangle_toy_family()
    comp = compose(fam, h2, l2, select)
    g, lists = comp.graph, comp.lists
    assert g.n <= 12
    assert find_coloring(g, lists) is None
    assert not list_colourable_naive(g.n, list(g.edges()), lists.lists)
    for rec in comp.copies:
        keep = [v for v in range(g.n) if v < comp.h2_n or v not in rec.vertices]
        sub, old = g.induced(keep)
        sub_lists = ListAssignment(tuple(lists[v] for v in old))
        partial = {old.index(v): c for v, c in enumerate(rec.psi)}
        assert find_coloring(sub, sub_lists, partial) is not None
    report(6, f"{g.n} vertices, {len(comp.copies)} copies in {clock.check():.1f}s")


@pytest.mark.criterion(7, "many-class toy: all 120 injections blocked, universe 7 = 2n-1")
def test_c7_thmkq_toy():
    clock = Clock(60)
    h = cyclic_instance(4, 2)
    con = build_thmkq(h, 1, [5])
    assert len(con.copies) == 120
    assert len(con.universe) == 7 == 2 * h.n - 1
    rep = verify_copies(con)
    assert rep.checked == 120 and rep.ok and rep.usable_sizes == (3,)
    b_sizes = {len(con.lists[v]) for _, bc in con.copies for v in bc}
    assert b_sizes == {5}
    report(7, f"120/120 copies blocked in {clock.check():.1f}s")


@pytest.mark.criterion(8, "fold toy: every disjoint-image injection into D (|D| = 21) blocked; B lists of size 5")
def test_c8_ab_toy():
    clock = Clock(60)
    h = matching_deleted_join(2)
    con = build_ab(h, 2)
    D = list(combinations(range(1, 8), 2))
    assert len(D) == con.params["D_size"] == 21
    disjoint = [c for c in permutations(D, 2) if not set(c[0]) & set(c[1])]
    assert len(disjoint) == 210
    rep = verify_copies(con)
    assert rep.checked == 210 and rep.ok
    by_c = dict(con.copies)
    for c in disjoint:
        bc = by_c[c]
        sub, old = con.graph.induced(list(range(h.n)) + list(bc))
        sub_lists = ListAssignment(tuple(con.lists[v] for v in old))
        assert find_bfold(sub, sub_lists, 2, {0: c[0], 1: c[1]}) is None
    b_sizes = {len(con.lists[v]) for _, bc in con.copies for v in bc}
    assert b_sizes == {5} == {2 * 2 * 2 - 1 - 1 * 2}
    report(8, f"210/210 disjoint injections blocked in {clock.check():.1f}s")


@pytest.mark.criterion(9, "order examples, reflexive/transitive on partitions <= 8, monotone witnesses")
def test_c9_order_and_monotonicity():
    clock = Clock(600)
    for k in range(1, 9):
        assert leq_order(Lambda.of(k), Lambda.ones(k))
    for p in integer_partitions(6):
        if p != (1,) * 6:
            assert leq_order(Lambda(p), Lambda.ones(4, 2))
    parts = [Lambda(p) for k in range(1, 9) for p in integer_partitions(k)]
    rel = {(a, b): leq_order(a, b) for a in parts for b in parts}
    for a in parts:
        assert rel[a, a]
    for a in parts:
        for b in parts:
            if not rel[a, b]:
                continue
            for c in parts:
                if rel[b, c]:
                    assert rel[a, c], (a, b, c)
    small = [Lambda(p) for k in range(1, 5) for p in integer_partitions(k)]
    graphs = [g for g in nx.graph_atlas_g()[1:] if g.number_of_nodes() <= 5]
    witnesses = 0
    for nxg in graphs:
        g = Graph.from_edges(nxg.number_of_nodes(), list(nxg.edges()))
        verdicts = {lam: lambda_choosable_small(g, lam) for lam in small}
        for lam2, v in verdicts.items():
            if v.status != "witness":
                continue
            witnesses += 1
            assert is_valid_assignment(g, v.lists, lam2, v.classes)
            assert find_coloring(g, v.lists) is None
            for lam in small:
                if lam != lam2 and leq_order(lam, lam2):
                    assert verdicts[lam].status == "witness", (list(nxg.edges()), lam, lam2)
    report(9, f"{len(parts)} partitions, {witnesses} witnesses checked in {clock.check():.1f}s")


@pytest.mark.criterion(10, "Steiner verifier on three hand-built instances")
def test_c10_steiner():
    clock = Clock(300)
    md = matching_deleted_join(4)
    rep = verify_steiner(md.graph, md.A, md.B, 4, md.eps)
    assert rep["cliques"] == "pass" and rep["non_neighbours"] == "pass"
    truth = has_kt_minor_contract(8, list(md.graph.edges()), rep["t"])
    assert rep["minor"] == ("fail" if truth else "pass")
    cj = complete_join(4, eps=1 / 2)
    rep = verify_steiner(cj.graph, cj.A, cj.B, 4, cj.eps)
    assert rep["t"] == 8 and rep["minor"] == "fail" and rep["verdict"] == "fail"
    cy = cyclic_instance(6, 2)
    rep = verify_steiner(cy.graph, cy.A, cy.B, 6, cy.eps)
    assert rep["t"] == 10 and rep["max_non_neighbours"] == 2
    assert not has_kt_minor_contract(12, list(cy.graph.edges()), 10)
    assert rep["verdict"] == "pass"
    report(10, f"three instances in {clock.check():.1f}s")
