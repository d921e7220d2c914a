"""List assignments, (lambda, C)-validity and exact list-colouring solvers."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, InvalidInput
from .graph import Graph, bits, to_mask
from .lambdas import ColourClasses, Lambda

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(l) for l in self.lists))

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]]) -> "ListAssignment":
        return cls(tuple(frozenset(l) for l in lists))

    @classmethod
    def uniform(cls, n: int, colours: Iterable[int]) -> "ListAssignment":
        c = frozenset(colours)
        return cls((c,) * n)

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, v):
        return self.lists[v]

    def colours(self) -> frozenset:
        return frozenset().union(*self.lists) if self.lists else frozenset()


@dataclass(frozen=True)
class AssignmentReport:
    ok: bool
    reason: str = "ok"
    vertex: int | None = None
    class_index: int | None = None

    def __bool__(self):
        return self.ok


def _check_carrier(g: Graph, l: ListAssignment) -> None:
    if len(l) < g.n:
        raise InvalidInput(f"list assignment covers {len(l)} vertices, graph has {g.n}")


def is_valid_assignment(g: Graph, l: ListAssignment, lam: Lambda,
                        c: ColourClasses) -> AssignmentReport:
    """Is ``l`` a (lam, c)-list assignment of ``g``? Reports the first violation."""
    _check_carrier(g, l)
    if len(c) != lam.size:
        raise InvalidInput(f"{len(c)} colour classes for a lambda with {lam.size} parts")
    for i, j in combinations(range(len(c)), 2):
        if c[i] & c[j]:
            return AssignmentReport(False, f"classes {i} and {j} intersect", None, i)
    for v in range(g.n):
        if not l[v]:
            return AssignmentReport(False, f"vertex {v} has an empty list", v, None)
        for i, (quota, cls) in enumerate(zip(lam.parts, c)):
            have = len(l[v] & cls)
            if have < quota:
                return AssignmentReport(
                    False, f"vertex {v} has {have} colours of class {i}, needs {quota}", v, i)
    return AssignmentReport(True)


# -- systems of distinct representatives ------------------------------------

@dataclass(frozen=True)
class SDRResult:
    reps: tuple | None
    hall_violator: frozenset | None = None   # indices of lists
    violator_pool: frozenset | None = None   # union of the violator's lists

    @property
    def ok(self) -> bool:
        return self.reps is not None


def clique_sdr(lists: Sequence[Iterable[int]]) -> SDRResult:
    """Distinct representatives via augmenting paths.

    On failure, returns the set of lists reachable by alternating paths from
    the unmatched ones: it has more members than colours in its union.
    """
    lists = [sorted(set(l)) for l in lists]
    owner: dict = {}            # colour -> list index
    match: list = [None] * len(lists)
    # greedy seed
    for i, l in enumerate(lists):
        for col in l:
            if col not in owner:
                owner[col] = i
                match[i] = col
                break

    def augment(i, seen):
        for col in lists[i]:
            if col in seen:
                continue
            seen.add(col)
            j = owner.get(col)
            if j is None or augment(j, seen):
                owner[col] = i
                match[i] = col
                return True
        return False

    for i in range(len(lists)):
        if match[i] is None:
            augment(i, set())
    free = [i for i, col in enumerate(match) if col is None]
    if not free:
        return SDRResult(tuple(match))
    # alternating reachability from every unmatched list
    reached = set(free)
    pool: set = set()
    stack = list(free)
    while stack:
        i = stack.pop()
        for col in lists[i]:
            if col not in pool:
                pool.add(col)
                j = owner[col]      # every reachable colour is matched
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
    return SDRResult(None, frozenset(reached), frozenset(pool))


# -- proper list colouring --------------------------------------------------

def _check_partial(g: Graph, l: ListAssignment, partial: Mapping[int, int]) -> None:
    for v, col in partial.items():
        g.check_vertices([v])
        if col not in l[v]:
            raise InvalidInput(f"partial colour {col} of vertex {v} is not in its list")
        for u in bits(g.adj[v]):
            if u in partial and partial[u] == col:
                raise InvalidInput(f"partial colouring is improper on edge {v}-{u}")


def find_coloring(g: Graph, l: ListAssignment,
                  partial: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """A proper colouring from the lists that extends ``partial``, or None.

    Exhaustive: smallest-remaining-list vertex first, colours ascending; the
    uncoloured part is split into connected components, and any component that
    is a clique is decided as a distinct-representatives problem.
    """
    _check_carrier(g, l)
    partial = dict(partial or {})
    _check_partial(g, l, partial)
    avail = {}
    for v in range(g.n):
        if v in partial:
            continue
        used = {partial[u] for u in bits(g.adj[v]) if u in partial}
        avail[v] = set(l[v]) - used
    rest = _solve(g, to_mask(avail), avail)
    if rest is None:
        return None
    out = dict(partial)
    out.update(rest)
    return dict(sorted(out.items()))


def _solve(g: Graph, mask: int, avail: dict) -> dict | None:
    out: dict = {}
    for comp in g.components(mask):
        sub = _solve_component(g, comp, avail)
        if sub is None:
            return None
        out.update(sub)
    return out


def _solve_component(g: Graph, comp: int, avail: dict) -> dict | None:
    verts = list(bits(comp))
    if any(not avail[v] for v in verts):
        return None
    if g.is_clique_mask(comp):
        res = clique_sdr([avail[v] for v in verts])
        return dict(zip(verts, res.reps)) if res.ok else None
    v = min(verts, key=lambda u: (len(avail[u]), u))
    nbrs = [u for u in bits(g.adj[v] & comp)]
    for col in sorted(avail[v]):
        touched = [u for u in nbrs if col in avail[u]]
        if any(len(avail[u]) == 1 for u in touched):
            continue
        for u in touched:
            avail[u].discard(col)
        sub = _solve(g, comp & ~(1 << v), avail)
        for u in touched:
            avail[u].add(col)
        if sub is not None:
            sub[v] = col
            return sub
    return None


def proper_colourings(g: Graph, l: ListAssignment, cap: int | None = None):
    """Yield every proper L-colouring as a tuple in vertex order (lexicographic)."""
    _check_carrier(g, l)
    order = list(range(g.n))
    lists = [sorted(l[v]) for v in order]
    cur: list = [None] * g.n
    count = 0

    def rec(i):
        nonlocal count
        if i == g.n:
            count += 1
            if cap is not None and count > cap:
                raise CapExceeded(f"more than {cap} proper colourings")
            yield tuple(cur)
            return
        for col in lists[i]:
            if any(cur[u] == col for u in bits(g.adj[i] & ((1 << i) - 1))):
                continue
            cur[i] = col
            yield from rec(i + 1)
        cur[i] = None

    yield from rec(0)


# -- b-fold colouring -------------------------------------------------------

@dataclass(frozen=True)
class FoldColoring:
    assignment: dict
    b: int

    def is_valid(self, g: Graph, l: ListAssignment) -> bool:
        for v in range(g.n):
            s = self.assignment.get(v)
            if s is None or len(s) != self.b or not set(s) <= l[v]:
                return False
        return all(not (set(self.assignment[u]) & set(self.assignment[v])) for u, v in g.edges())


def find_bfold(g: Graph, l: ListAssignment, b: int,
               partial: Mapping[int, Iterable[int]] | None = None) -> FoldColoring | None:
    """A b-fold L-colouring extending ``partial`` (vertex -> b-set), or None."""
    if not isinstance(b, int) or b < 1:
        raise InvalidInput("b must be a positive integer")
    _check_carrier(g, l)
    partial = {v: frozenset(s) for v, s in (partial or {}).items()}
    for v, s in partial.items():
        g.check_vertices([v])
        if len(s) != b or not s <= l[v]:
            raise InvalidInput(f"partial set of vertex {v} is not a {b}-subset of its list")
        for u in bits(g.adj[v]):
            if u in partial and partial[u] & s:
                raise InvalidInput(f"partial b-fold colouring overlaps on edge {v}-{u}")
    short = [v for v in range(g.n) if len(l[v]) < b]
    if short:
        log.info("vertex %d has fewer than %d colours; no %d-fold colouring", short[0], b, b)
        return None
    avail = {}
    for v in range(g.n):
        if v in partial:
            continue
        used = set().union(*(partial[u] for u in bits(g.adj[v]) if u in partial))
        avail[v] = set(l[v]) - used
    chosen: dict = {}

    def rec(mask):
        if not mask:
            return True
        v = min(bits(mask), key=lambda u: (len(avail[u]), u))
        if len(avail[v]) < b:
            return False
        nbrs = list(bits(g.adj[v] & mask))
        for pick in combinations(sorted(avail[v]), b):
            removed = []
            for u in nbrs:
                hit = avail[u] & set(pick)
                if hit:
                    avail[u] -= hit
                    removed.append((u, hit))
            if all(len(avail[u]) >= b for u in nbrs):
                chosen[v] = frozenset(pick)
                if rec(mask & ~(1 << v)):
                    return True
                del chosen[v]
            for u, hit in removed:
                avail[u] |= hit
        return False

    if not rec(to_mask(avail)):
        return None
    out = dict(partial)
    out.update(chosen)
    return FoldColoring(dict(sorted(out.items())), b)


def fold_colourings(g: Graph, l: ListAssignment, b: int, cap: int | None = None):
    """Yield every b-fold L-colouring as a tuple of sorted b-tuples in vertex order."""
    _check_carrier(g, l)
    lists = [sorted(l[v]) for v in range(g.n)]
    cur: list = [None] * g.n
    count = 0

    def rec(i):
        nonlocal count
        if i == g.n:
            count += 1
            if cap is not None and count > cap:
                raise CapExceeded(f"more than {cap} {b}-fold colourings")
            yield tuple(cur)
            return
        used = set()
        for u in bits(g.adj[i] & ((1 << i) - 1)):
            used.update(cur[u])
        for pick in combinations([c for c in lists[i] if c not in used], b):
            cur[i] = pick
            yield from rec(i + 1)
        cur[i] = None

    yield from rec(0)
