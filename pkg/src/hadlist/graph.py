"""Undirected simple graphs on dense vertex ids, stored as neighbour bitmasks."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput

MAX_VERTICES = 1024


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: Mapping[int, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InvalidInput("adjacency length does not match n")
        for v, nb in enumerate(self.adj):
            if nb >> v & 1:
                raise InvalidInput(f"self-loop at {v}")
            if nb >> self.n:
                raise InvalidInput(f"neighbour of {v} out of range")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise InvalidInput(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]],
                   labels: Mapping[int, str] | None = None,
                   max_vertices: int = MAX_VERTICES) -> "Graph":
        if n < 0 or n > max_vertices:
            raise InvalidInput(f"vertex count {n} outside [0, {max_vertices}]")
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), dict(labels or {}))

    # -- basic queries ---------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise InvalidInput(f"vertex {v!r} out of range for n={self.n}")

    def is_clique_mask(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def is_connected_mask(self, mask: int) -> bool:
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= self.adj[v]
            frontier = reach & mask & ~seen
            seen |= frontier
        return seen == mask

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``mask``, as masks."""
        rest = self.full if mask is None else mask
        out = []
        while rest:
            seen = rest & -rest
            frontier = seen
            while frontier:
                reach = 0
                for v in bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & rest & ~seen
                seen |= frontier
            out.append(seen)
            rest &= ~seen
        return out

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``; returns it with the new->old id map."""
        order = list(vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in combinations(order, 2) if self.has_edge(u, v)]
        labels = {index[v]: s for v, s in self.labels.items() if v in index}
        return Graph.from_edges(len(order), edges, labels), order

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- standard families ----------------------------------------------
    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def wheel(cls, rim: int) -> "Graph":
        """Hub 0 joined to a rim cycle on 1..rim."""
        edges = [(0, i) for i in range(1, rim + 1)]
        edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
        return cls.from_edges(rim + 1, edges)

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    s = list(s)
    g.check_vertices(s)
    return g.is_clique_mask(to_mask(s))


@dataclass(frozen=True)
class CliqueSum:
    graph: Graph
    map1: tuple[int, ...]   # vertex of g1 -> vertex of the sum
    map2: tuple[int, ...]   # vertex of g2 -> vertex of the sum


def clique_sum(g1: Graph, s1: Sequence[int], g2: Graph, s2: Sequence[int],
               drop: Iterable[Sequence[int]] = ()) -> CliqueSum:
    """Glue ``g2`` onto ``g1`` by identifying ``s2[i]`` with ``s1[i]``.

    ``drop`` lists shared-clique edges to delete afterwards, in ``g1``'s ids.
    Vertices of ``g1`` keep their ids; private vertices of ``g2`` follow in order.
    """
    s1, s2 = list(s1), list(s2)
    g1.check_vertices(s1)
    g2.check_vertices(s2)
    if len(s1) != len(s2) or len(set(s1)) != len(s1) or len(set(s2)) != len(s2):
        raise InvalidInput("s1 and s2 must be equal-size vertex sequences without repeats")
    if not is_clique(g1, s1) or not is_clique(g2, s2):
        raise InvalidInput("clique-sum requires both glued sets to be cliques")
    shared = set(s1)
    drop = [tuple(e) for e in drop]
    for u, v in drop:
        if u not in shared or v not in shared or u == v:
            raise InvalidInput(f"dropped edge {u}-{v} is not an edge of the shared clique")

    pair = dict(zip(s2, s1))
    map2 = []
    nxt = g1.n
    for v in range(g2.n):
        if v in pair:
            map2.append(pair[v])
        else:
            map2.append(nxt)
            nxt += 1
    edges = set(g1.edges())
    edges.update(tuple(sorted((map2[u], map2[v]))) for u, v in g2.edges())
    edges.difference_update(tuple(sorted(e)) for e in drop)
    labels = {map2[v]: s for v, s in g2.labels.items()}
    labels.update(g1.labels)
    out = Graph.from_edges(nxt, sorted(edges), labels)
    return CliqueSum(out, tuple(range(g1.n)), tuple(map2))
