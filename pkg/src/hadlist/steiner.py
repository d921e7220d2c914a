"""Two-clique graphs with few non-neighbours per vertex and no K_t minor,
t = ceil((1 + 2 eps) n): deterministic instances, a verifier, and a
seeded sample-and-verify search."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, InvalidInput
from .graph import Graph, bits, to_mask
from .minors import DEFAULT_BUDGET, find_kt_minor


@dataclass(frozen=True)
class SteinerGraph:
    graph: Graph
    A: tuple[int, ...]
    B: tuple[int, ...]
    n: int
    eps: Fraction
    verified_minor_free_up_to: int | None = None

    @property
    def slack(self) -> int:
        """floor(eps * n): the allowed number of non-neighbours per vertex."""
        return math.floor(self.eps * self.n)

    @property
    def t(self) -> int:
        return steiner_t(self.n, self.eps)


def steiner_t(n: int, eps) -> int:
    return math.ceil((1 + 2 * Fraction(eps)) * n)


def _two_cliques(n: int, cross_missing) -> Graph:
    """A = 0..n-1, B = n..2n-1, both cliques; cross edges except ``cross_missing``."""
    missing = {(i, j) for i, j in cross_missing}
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges += [(n + u, n + v) for u in range(n) for v in range(u + 1, n)]
    edges += [(i, n + j) for i in range(n) for j in range(n) if (i, j) not in missing]
    labels = {i: f"A{i}" for i in range(n)}
    labels.update({n + j: f"B{j}" for j in range(n)})
    return Graph.from_edges(2 * n, edges, labels)


def cyclic_instance(n: int, r: int, eps=None) -> SteinerGraph:
    """A_i misses B_i, ..., B_{i+r-1} (indices mod n): every vertex has exactly
    r non-neighbours. ``eps`` defaults to r/n."""
    if not 0 <= r <= n:
        raise InvalidInput("need 0 <= r <= n")
    g = _two_cliques(n, [(i, (i + s) % n) for i in range(n) for s in range(r)])
    eps = Fraction(r, n) if eps is None else Fraction(eps)
    return SteinerGraph(g, tuple(range(n)), tuple(range(n, 2 * n)), n, eps)


def matching_deleted_join(n: int, eps=None) -> SteinerGraph:
    return cyclic_instance(n, 1, eps)


def complete_join(n: int, eps=0) -> SteinerGraph:
    return cyclic_instance(n, 0, eps)


def verify_steiner(h: Graph, A, B, n: int, eps, budget: int | None = DEFAULT_BUDGET) -> dict:
    """Check the three properties; the minor property exactly, or report
    "inconclusive" when the search budget runs out."""
    A, B = list(A), list(B)
    eps = Fraction(eps)
    if len(A) != n or len(B) != n or set(A) & set(B) or len(set(A)) != n or len(set(B)) != n:
        raise InvalidInput("A and B must be disjoint sets of n vertices each")
    if h.n != 2 * n:
        raise InvalidInput(f"graph has {h.n} vertices, expected {2 * n}")
    h.check_vertices(A + B)
    slack = math.floor(eps * n)
    t = steiner_t(n, eps)
    report: dict = {"n": n, "eps": str(eps), "t": t, "slack": slack}
    report["cliques"] = "pass" if h.is_clique_mask(to_mask(A)) and h.is_clique_mask(to_mask(B)) else "fail"
    worst = max((h.n - 1 - h.degree(v)) for v in range(h.n))
    report["max_non_neighbours"] = worst
    report["non_neighbours"] = "pass" if worst <= slack else "fail"
    try:
        model = find_kt_minor(h, t, budget=budget)
        if model is None:
            report["minor"] = "pass"
        else:
            report["minor"] = "fail"
            report["model"] = [sorted(z) for z in model.branch_sets]
    except BudgetExceeded:
        report["minor"] = "inconclusive"
    checks = (report["cliques"], report["non_neighbours"], report["minor"])
    report["verdict"] = ("pass" if all(c == "pass" for c in checks)
                         else "fail" if "fail" in checks else "inconclusive")
    return report


def sample_steiner(n: int, eps, seed: int, budget: int = 1000,
                   minor_budget: int | None = DEFAULT_BUDGET) -> SteinerGraph | None:
    """Sample cross non-edges independently with probability eps/2, reject
    draws exceeding the non-neighbour bound, and return the first draw that
    passes :func:`verify_steiner`. Attempt i uses the seed pair (seed, i)."""
    eps = Fraction(eps)
    p = float(eps) / 2
    slack = math.floor(eps * n)
    for attempt in range(budget):
        rng = np.random.default_rng([seed, attempt])
        drop = rng.random((n, n)) < p
        missing = [(i, j) for i in range(n) for j in range(n) if drop[i, j]]
        if drop.sum(axis=1).max(initial=0) > slack or drop.sum(axis=0).max(initial=0) > slack:
            continue
        g = _two_cliques(n, missing)
        A, B = tuple(range(n)), tuple(range(n, 2 * n))
        rep = verify_steiner(g, A, B, n, eps, budget=minor_budget)
        if rep["verdict"] == "pass":
            return SteinerGraph(g, A, B, n, eps, rep["t"])
    return None
