"""Exact K_t-minor detection with checkable branch-set certificates.

Two strategies, chosen per block (2-connected piece) of the input:

* low-deficiency: when ``|block| - t <= DEFICIENCY_LIMIT`` almost every branch
  set is a singleton, and the non-singleton part W must cover every non-edge.
  We enumerate such covers W and partitions of W.
* general: branch-and-bound over contractions/deletions of a quotient graph
  with memoised dead states. Meant for blocks of up to ~20 vertices.

Every model found is re-checked by :func:`verify_minor_model` before return.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import networkx as nx

from .errors import BudgetExceeded, InvalidInput
from .graph import Graph, bits, to_mask

DEFICIENCY_LIMIT = 6
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple[frozenset, ...]

    @classmethod
    def of(cls, sets) -> "MinorModel":
        return cls(tuple(frozenset(s) for s in sets))

    @property
    def t(self) -> int:
        return len(self.branch_sets)


def verify_minor_model(g: Graph, m: MinorModel) -> tuple[bool, str]:
    """Check disjointness, connectivity and pairwise adjacency of ``m`` in ``g``."""
    masks = []
    seen = 0
    for i, z in enumerate(m.branch_sets):
        if not z:
            return False, f"branch set {i} is empty"
        if any(not (isinstance(v, int) and 0 <= v < g.n) for v in z):
            return False, f"branch set {i} has a vertex outside the graph"
        mask = to_mask(z)
        if mask & seen:
            return False, f"branch set {i} overlaps an earlier one"
        if not g.is_connected_mask(mask):
            return False, f"branch set {i} is not connected"
        seen |= mask
        masks.append(mask)
    for i, j in combinations(range(len(masks)), 2):
        if not _touches(g, masks[i], masks[j]):
            return False, f"branch sets {i} and {j} are not joined by an edge"
    return True, "ok"


def _touches(g: Graph, a: int, b: int) -> bool:
    for v in bits(a):
        if g.adj[v] & b:
            return True
    return False


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.used = 0

    def tick(self, k=1):
        self.used += k
        if self.budget is not None and self.used > self.budget:
            raise BudgetExceeded(f"minor search exceeded budget of {self.budget} nodes", self.used)


def find_kt_minor(g: Graph, t: int, budget: int | None = DEFAULT_BUDGET) -> MinorModel | None:
    """Return a K_t minor model of ``g`` or ``None`` if none exists.

    Raises :class:`BudgetExceeded` if more than ``budget`` search nodes were
    needed; that outcome says nothing about existence.
    """
    if not isinstance(t, int) or t < 1:
        raise InvalidInput("t must be a positive integer")
    if t > g.n:
        return None
    if t == 1:
        return MinorModel.of([{0}])
    if t == 2:
        for u, v in g.edges():
            return MinorModel.of([{u}, {v}])
        return None
    if g.m < t * (t - 1) // 2:
        return None
    counter = _Counter(budget)
    for block in _blocks(g, t):
        sub, old = g.induced(block)
        model = _search_block(sub, t, counter)
        if model is not None:
            model = MinorModel.of([{old[v] for v in z} for z in model.branch_sets])
            ok, why = verify_minor_model(g, model)
            assert ok, why
            return model
    return None


def _blocks(g: Graph, t: int) -> list[list[int]]:
    # for t >= 3, K_t is 2-connected, so any K_t minor lives inside one block
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    blocks = [sorted(b) for b in nx.biconnected_components(nxg) if len(b) >= t]
    blocks.sort()
    return blocks


def _search_block(g: Graph, t: int, counter: _Counter) -> MinorModel | None:
    if g.m < t * (t - 1) // 2:
        return None
    if t == 3:
        return _triangle_minor(g)
    if g.n - t <= DEFICIENCY_LIMIT:
        return _low_deficiency(g, t, counter)
    return _General(g, t, counter).run()


def _triangle_minor(g: Graph) -> MinorModel | None:
    # a 2-connected block on >= 3 vertices has a cycle; split one into 3 arcs
    nxg = nx.Graph(g.edges())
    try:
        cyc = nx.find_cycle(nxg, source=0)
    except nx.NetworkXNoCycle:
        return None
    verts = [e[0] for e in cyc]
    return MinorModel.of([{verts[0]}, {verts[1]}, set(verts[2:])])


# -- low-deficiency strategy ---------------------------------------------

def _low_deficiency(g: Graph, t: int, counter: _Counter) -> MinorModel | None:
    n = g.n
    d = n - t
    full = g.full
    if d == 0:
        return MinorModel.of([{v} for v in range(n)]) if g.is_clique_mask(full) else None
    non = [full & ~g.adj[v] & ~(1 << v) for v in range(n)]
    # a singleton branch set needs t-1 neighbours
    forced = to_mask(v for v in range(n) if g.degree(v) < t - 1)
    if forced.bit_count() > 2 * d:
        return None

    def covers(w: int, x: int):
        counter.tick()
        if w.bit_count() > 2 * d:
            return
        rest = full & ~w
        for u in bits(rest):
            open_ = non[u] & rest
            if open_:
                if not x >> u & 1:
                    yield from covers(w | 1 << u, x)
                if not (open_ & x):
                    yield from covers(w | open_, x | 1 << u)
                return
        yield w, x

    for w, x in covers(forced, 0):
        free = full & ~w & ~x
        room = 2 * d - w.bit_count()
        free_list = list(bits(free))
        for extra in range(0, room + 1):
            for add in combinations(free_list, extra):
                ww = w | to_mask(add)
                k = ww.bit_count() - d
                if k < 1:
                    continue
                model = _partition_w(g, ww, k, counter)
                if model is not None:
                    singles = [{v} for v in bits(full & ~ww)]
                    return MinorModel.of(model + singles)
    return None


def _partition_w(g: Graph, w: int, k: int, counter: _Counter):
    """Split ``w`` into ``k`` connected parts of size >= 2, pairwise adjacent,
    each dominating the (clique) complement of ``w``."""
    rest_of_graph = g.full & ~w

    def reach(mask):
        r = 0
        for v in bits(mask):
            r |= g.adj[v]
        return r

    def rec(remaining: int, parts: list[int], reaches: list[int]):
        counter.tick()
        left = k - len(parts)
        size = remaining.bit_count()
        if left == 0:
            return parts if remaining == 0 else None
        if size < 2 * left:
            return None
        first = remaining & -remaining
        others = list(bits(remaining & ~first))
        max_extra = size - 2 * (left - 1) - 1
        for extra in range(1, max_extra + 1):
            for mates in combinations(others, extra):
                z = first | to_mask(mates)
                if left == 1 and z != remaining:
                    continue
                if not g.is_connected_mask(z):
                    continue
                rz = reach(z)
                if rest_of_graph & ~rz:
                    continue
                if any(not (rz & p) for p in parts):
                    continue
                found = rec(remaining & ~z, parts + [z], reaches + [rz])
                if found is not None:
                    return found
        return None

    parts = rec(w, [], [])
    if parts is None:
        return None
    return [set(bits(p)) for p in parts]


# -- general strategy ----------------------------------------------------

class _General:
    """Search over quotient graphs whose vertices are connected vertex sets.

    A state is a sorted tuple of branch-set masks plus a mask of indices that
    are fixed as final branch sets. Moves: fix a set as final, merge it with an
    adjacent non-final set, or delete it.
    """

    def __init__(self, g: Graph, t: int, counter: _Counter):
        self.g = g
        self.t = t
        self.counter = counter
        self.dead: set = set()
        self.need_edges = t * (t - 1) // 2

    def run(self):
        start = tuple((1 << v) for v in range(self.g.n))
        found = self.search(start, frozenset())
        if found is None:
            return None
        return MinorModel.of([set(bits(z)) for z in found])

    def _reach(self, z: int) -> int:
        r = 0
        for v in bits(z):
            r |= self.g.adj[v]
        return r & ~z

    def _quotient(self, sets):
        reaches = [self._reach(z) for z in sets]
        q = []
        for i, ri in enumerate(reaches):
            row = 0
            for j, zj in enumerate(sets):
                if i != j and ri & zj:
                    row |= 1 << j
            q.append(row)
        return q

    def search(self, sets: tuple[int, ...], final: frozenset):
        t = self.t
        while True:
            key = (sets, final)
            if key in self.dead:
                return None
            self.counter.tick()
            s = len(sets)
            if s < t:
                self.dead.add(key)
                return None
            q = self._quotient(sets)
            deg = [row.bit_count() for row in q]
            if sum(deg) // 2 < self.need_edges:
                self.dead.add(key)
                return None
            fin_mask = to_mask(sets.index(z) for z in final)
            for i in bits(fin_mask):
                if deg[i] < t - 1 or (fin_mask & ~(1 << i)) & ~q[i]:
                    self.dead.add(key)
                    return None
            clique = _find_clique(q, t, deg)
            if clique is not None:
                return [sets[i] for i in clique]
            reduced = self._reduce(sets, final, q, deg, fin_mask)
            if reduced is None:
                break
            self.dead.add(key)
            sets, final = reduced

        # branch on the non-final set of minimum quotient degree
        cand = [i for i in range(s) if not fin_mask >> i & 1]
        i = min(cand, key=lambda j: (deg[j], j))
        zi = sets[i]
        if deg[i] >= t - 1 and not (fin_mask & ~q[i]):
            found = self.search(sets, final | {zi})
            if found is not None:
                return found
        for j in bits(q[i] & ~fin_mask):
            merged = _replace(sets, (i, j), zi | sets[j])
            found = self.search(merged, _keep(final, merged))
            if found is not None:
                return found
        deleted = _replace(sets, (i,), None)
        found = self.search(deleted, _keep(final, deleted))
        if found is not None:
            return found
        self.dead.add((sets, final))
        return None

    def _reduce(self, sets, final, q, deg, fin_mask):
        """One safe simplification step, or None when nothing applies."""
        t = self.t
        for i in range(len(sets)):
            if fin_mask >> i & 1:
                continue
            if deg[i] <= 1:
                out = _replace(sets, (i,), None)
                return out, _keep(final, out)
            if deg[i] == 2 and t >= 4:
                nb = [j for j in bits(q[i]) if not fin_mask >> j & 1]
                if not nb:
                    out = _replace(sets, (i,), None)
                else:
                    j = nb[0]
                    out = _replace(sets, (i, j), sets[i] | sets[j])
                return out, _keep(final, out)
            if deg[i] < t - 1:
                row = q[i]
                if all(not ((row & ~(1 << j)) & ~q[j]) for j in bits(row)):
                    # simplicial and too small to be its own branch set
                    out = _replace(sets, (i,), None)
                    return out, _keep(final, out)
        return None


def _replace(sets, idx, new):
    out = [z for k, z in enumerate(sets) if k not in idx]
    if new is not None:
        out.append(new)
    return tuple(sorted(out))


def _keep(final, sets):
    present = set(sets)
    return frozenset(z for z in final if z in present)


def _find_clique(q: Sequence[int], t: int, deg: Sequence[int]):
    """Indices of some t-clique in the quotient, preferring low indices."""
    ok = to_mask(i for i, d in enumerate(deg) if d >= t - 1)

    def rec(chosen, cand):
        if len(chosen) == t:
            return chosen
        if len(chosen) + cand.bit_count() < t:
            return None
        for v in bits(cand):
            res = rec(chosen + [v], cand & q[v] & ~((1 << (v + 1)) - 1))
            if res is not None:
                return res
        return None

    return rec([], ok)
