"""Obstacle gadgets and copy constructions.

Two clique-pattern gadgets: a clique A, a clique B, and each B vertex joined
to exactly one pattern set X of A (an (a+3)-subset, or two vertices from each
triple of A). Colouring A by psi and giving B the lists built from psi leaves
the B clique one colour short. Each gadget has a counting certificate for
K_t-minor-freeness and a selector that finds the matching clique pattern in
any colouring of K_{t-1}.

Two copy constructions over a two-clique graph H: one copy of H per
injection of A into the colour pool, with the copies' A sides identified.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Mapping, Sequence

from .colouring import (ListAssignment, SDRResult, clique_sdr, find_bfold,
                        find_coloring, fold_colourings, is_valid_assignment)
from .errors import CapExceeded, InvalidInput
from .graph import Graph, bits, to_mask
from .lambdas import ColourClasses, Lambda, aligned
from .obstacles import ObstacleFamily, Witness
from .steiner import SteinerGraph

log = logging.getLogger(__name__)

DEFAULT_COPY_CAP = 10 ** 5
DEFAULT_PSI_CAP = 10 ** 5


def _check_nonneg_int(name, value):
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise InvalidInput(f"{name} must be a non-negative integer, got {value!r}")


def _pattern_graph(n_a: int, targets: Sequence[tuple], a_labels) -> Graph:
    """Cliques A = 0..n_a-1 and B (one vertex per target), B_i joined to targets[i]."""
    nb = len(targets)
    edges = list(combinations(range(n_a), 2))
    edges += list(combinations(range(n_a, n_a + nb), 2))
    labels = dict(a_labels)
    for i, x in enumerate(targets):
        v = n_a + i
        edges += [(u, v) for u in x]
        labels[v] = f"B{i}:X={{{','.join(map(str, x))}}}"
    return Graph.from_edges(n_a + nb, edges, labels)


def _attachments(graph: Graph, A: Sequence[int], B: Sequence[int]) -> dict:
    """N_A(v) (sorted tuple) -> B vertices with exactly that A-neighbourhood."""
    amask = to_mask(A)
    out: dict = {}
    for v in B:
        out.setdefault(tuple(bits(graph.adj[v] & amask)), []).append(v)
    return {x: tuple(vs) for x, vs in out.items()}


def _psi_map(A: Sequence[int], psi) -> dict:
    if isinstance(psi, Mapping):
        mp = dict(psi)
        if set(mp) != set(A):
            raise InvalidInput("psi must colour exactly the vertices of A")
    else:
        psi = tuple(psi)
        if len(psi) != len(A):
            raise InvalidInput(f"psi has {len(psi)} colours for |A| = {len(A)}")
        mp = dict(zip(A, psi))
    if len(set(mp.values())) != len(mp):
        raise InvalidInput(f"psi is not injective: {sorted(mp.items())}")
    return mp


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    checks: dict
    lhs: int | None
    rhs: int
    reason: str

    def __bool__(self):
        return self.ok


def _pattern_certificate(graph: Graph, A, B, t: int, patterns, size_a: int,
                         size_b: int) -> CertificateReport:
    """Counting argument: a K_t model would need at least two (resp. a+3)
    branch sets inside A; one of them misses a whole pattern X, whose B_X
    vertices then lie outside its neighbourhood, so
    t - 1 <= |V| - min |B_X| is required for any model."""
    patterns = [tuple(sorted(x)) for x in patterns]
    att = _attachments(graph, A, B)
    counts = [len(att.get(x, ())) for x in patterns]
    m = len(patterns)
    floor_bound = len(B) // m if m else 0
    checks = {
        "vertex_partition": sorted(list(A) + list(B)) == list(range(graph.n)),
        "A_size": len(A) == size_a,
        "B_size": len(B) == size_b,
        "A_clique": graph.is_clique_mask(to_mask(A)),
        "B_clique": graph.is_clique_mask(to_mask(B)),
        "attachments": set(att) <= set(patterns),
        "family_floor": bool(counts) and min(counts) >= floor_bound,
    }
    lhs = len(A) + len(B) - min(counts) if counts else None
    checks["chain"] = lhs is not None and lhs < t - 1
    bad = [k for k, ok in checks.items() if not ok]
    if not bad:
        reason = f"|A|+|B|-min|B_X| = {lhs} < t-1 = {t - 1}"
    elif bad[0] == "chain":
        reason = f"chain violated: |A|+|B|-min|B_X| = {lhs} >= t-1 = {t - 1}"
    else:
        reason = f"structural check failed: {bad[0]}"
    return CertificateReport(not bad, checks, lhs, t - 1, reason)


# -- single big class gadget ---------------------------------------------------

@dataclass(frozen=True)
class Thm2Palette:
    b: tuple[int, ...]      # singleton classes
    a: tuple[int, ...]      # 3a+6 colours for A
    c: tuple[int, ...]      # 2a+3 padding colours of the big class

    def names(self) -> dict:
        out = {}
        for prefix, cols in (("b", self.b), ("a", self.a), ("c", self.c)):
            out.update({col: f"{prefix}{i + 1}" for i, col in enumerate(cols)})
        return out


def thm2_threshold(a: int) -> int:
    return (2 * a + 5) * math.comb(2 * a + 5, a + 3) + 2


def thm2_palette(a: int, t: int) -> Thm2Palette:
    nb = max(t - 2 * a - 6, 0)
    b = tuple(range(nb))
    av = tuple(range(nb, nb + 3 * a + 6))
    c = tuple(range(nb + 3 * a + 6, nb + 5 * a + 9))
    return Thm2Palette(b, av, c)


@dataclass(frozen=True)
class Thm2Gadget:
    graph: Graph
    a: int
    t: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    families: dict          # (a+3)-subset X of A -> B vertices attached to X

    @property
    def m(self) -> int:
        return math.comb(2 * self.a + 5, self.a + 3)

    @property
    def t1(self) -> int:
        return thm2_threshold(self.a)

    @property
    def in_regime(self) -> bool:
        return self.t >= self.t1

    @property
    def palette(self) -> Thm2Palette:
        return thm2_palette(self.a, self.t)

    def patterns(self) -> list[tuple]:
        return list(combinations(self.A, self.a + 3))


def build_thm2(a: int, t: int) -> Thm2Gadget:
    """A = (2a+5)-clique, B = (t-2)-clique, B spread round-robin over the
    (a+3)-subsets of A in lexicographic order."""
    _check_nonneg_int("a", a)
    _check_nonneg_int("t", t)
    n_a = 2 * a + 5
    if t < n_a:
        raise InvalidInput(f"t = {t} is below 2a+5 = {n_a}")
    subsets = list(combinations(range(n_a), a + 3))
    targets = [subsets[i % len(subsets)] for i in range(t - 2)]
    graph = _pattern_graph(n_a, targets, {i: f"A{i}" for i in range(n_a)})
    A = tuple(range(n_a))
    B = tuple(range(n_a, graph.n))
    att = _attachments(graph, A, B)
    g = Thm2Gadget(graph, a, t, A, B, {x: att.get(x, ()) for x in subsets})
    if not g.in_regime:
        log.info("thm2 gadget with t=%d below threshold %d (out of regime)", t, g.t1)
    return g


def thm2_classes(g: Thm2Gadget) -> tuple[Lambda, ColourClasses]:
    p = g.palette
    return aligned([(3 * g.a + 6, set(p.a) | set(p.c))] + [(1, {b}) for b in p.b])


def thm2_lists(g: Thm2Gadget, psi) -> tuple[ListAssignment, Lambda, ColourClasses]:
    """A gets every a- and b-colour; v in B gets psi(N_A(v)) plus every b- and c-colour."""
    p = g.palette
    if g.t - 2 * g.a - 6 < 0:
        raise InvalidInput("lists need t >= 2a+6")
    mp = _psi_map(g.A, psi)
    if not set(mp.values()) <= set(p.a):
        raise InvalidInput("psi must map A into the a-colours")
    base_a = frozenset(p.a) | frozenset(p.b)
    base_b = frozenset(p.b) | frozenset(p.c)
    amask = to_mask(g.A)
    lists = [frozenset()] * g.graph.n
    for v in g.A:
        lists[v] = base_a
    for v in g.B:
        lists[v] = base_b | {mp[u] for u in bits(g.graph.adj[v] & amask)}
    lam, classes = thm2_classes(g)
    return ListAssignment(tuple(lists)), lam, classes


def canonical_psi_thm2(g: Thm2Gadget) -> dict:
    return dict(zip(g.A, g.palette.a))


def thm2_domain(g: Thm2Gadget):
    """Every injection of A into the a-colours, aligned with A."""
    return permutations(g.palette.a, len(g.A))


def verify_thm2_certificate(g: Thm2Gadget) -> CertificateReport:
    return _pattern_certificate(g.graph, g.A, g.B, g.t, g.patterns(),
                                2 * g.a + 5, g.t - 2)


def pattern_clique_thm2(psi: Sequence[int], a_colours, a: int) -> tuple | None:
    """The first 2a+5 vertices (in id order) whose colour is an a-colour."""
    a_set = set(a_colours)
    hits = [v for v, col in enumerate(psi) if col in a_set]
    need = 2 * a + 5
    return tuple(hits[:need]) if len(hits) >= need else None


def thm2_family(g: Thm2Gadget) -> ObstacleFamily:
    lam, classes = thm2_classes(g)
    return ObstacleFamily(g.graph, g.A, lam, classes,
                          lambda psi: thm2_lists(g, psi)[0], lambda: thm2_domain(g))


def thm2_h2(g: Thm2Gadget) -> tuple[Graph, ListAssignment]:
    p = g.palette
    return Graph.complete(g.t - 1), ListAssignment.uniform(g.t - 1, set(p.a) | set(p.b))


# -- triple-pattern gadget -----------------------------------------------------

@dataclass(frozen=True)
class Thm3Palette:
    b: tuple[int, ...]
    d: tuple[tuple[int, int, int], ...]     # 2a+3 triples d^j_1..3
    c: tuple[int, ...]                      # c_j
    cc: tuple[tuple[int, int, int], ...]    # c^j_1..3

    def names(self) -> dict:
        out = {col: f"b{i + 1}" for i, col in enumerate(self.b)}
        for j in range(len(self.d)):
            out[self.c[j]] = f"c{j + 1}"
            for r in range(3):
                out[self.d[j][r]] = f"d{j + 1}_{r + 1}"
                out[self.cc[j][r]] = f"c{j + 1}_{r + 1}"
        return out


def thm3_threshold(a: int) -> int:
    return (2 * a + 5) * 3 ** (a + 2) + a + 3


def thm3_palette(a: int, t: int) -> Thm3Palette:
    nb = max(t - 5 * a - 9, 0)
    k = 2 * a + 3
    b = tuple(range(nb))
    d = tuple(tuple(range(nb + 3 * j, nb + 3 * j + 3)) for j in range(k))
    base = nb + 3 * k
    c = tuple(range(base, base + k))
    base += k
    cc = tuple(tuple(range(base + 3 * j, base + 3 * j + 3)) for j in range(k))
    return Thm3Palette(b, d, c, cc)


@dataclass(frozen=True)
class Thm3Gadget:
    graph: Graph
    a: int
    t: int
    triples: tuple[tuple[int, int, int], ...]
    B: tuple[int, ...]
    families: dict          # X in T -> B vertices attached to X

    @property
    def A(self) -> tuple[int, ...]:
        return tuple(v for tr in self.triples for v in tr)

    @property
    def m(self) -> int:
        return 3 ** (self.a + 2)

    @property
    def t2(self) -> int:
        return thm3_threshold(self.a)

    @property
    def in_regime(self) -> bool:
        return self.t >= self.t2

    @property
    def palette(self) -> Thm3Palette:
        return thm3_palette(self.a, self.t)

    def patterns(self) -> list[tuple]:
        return _two_per_triple(self.triples)


def _two_per_triple(triples) -> list[tuple]:
    choices = [list(combinations(tr, 2)) for tr in triples]
    return [tuple(sorted(v for pair in pick for v in pair)) for pick in product(*choices)]


def build_thm3(a: int, t: int) -> Thm3Gadget:
    """A = a+2 disjoint triples (a clique), B = (t-a-3)-clique spread
    round-robin over the sets meeting every triple in two vertices."""
    _check_nonneg_int("a", a)
    _check_nonneg_int("t", t)
    n_a = 3 * (a + 2)
    if t < a + 3:
        raise InvalidInput(f"t = {t} is below a+3 = {a + 3}")
    triples = tuple(tuple(range(3 * i, 3 * i + 3)) for i in range(a + 2))
    T = _two_per_triple(triples)
    targets = [T[i % len(T)] for i in range(t - a - 3)]
    labels = {3 * i + r: f"A{i}_{r}" for i in range(a + 2) for r in range(3)}
    graph = _pattern_graph(n_a, targets, labels)
    B = tuple(range(n_a, graph.n))
    att = _attachments(graph, range(n_a), B)
    g = Thm3Gadget(graph, a, t, triples, B, {x: att.get(x, ()) for x in T})
    if not g.in_regime:
        log.info("thm3 gadget with t=%d below threshold %d (out of regime)", t, g.t2)
    return g


def thm3_classes(g: Thm3Gadget) -> tuple[Lambda, ColourClasses]:
    p = g.palette
    big = [(3, set(p.d[j]) | {p.c[j]} | set(p.cc[j])) for j in range(len(p.d))]
    return aligned(big + [(1, {b}) for b in p.b])


def triple_indices(g: Thm3Gadget, mp: Mapping[int, int]) -> list[int]:
    """For each triple of A, the index j with psi(u_r) = d^j_r; raises if
    psi is not triple-structured."""
    p = g.palette
    where = {col: (j, r) for j, tr in enumerate(p.d) for r, col in enumerate(tr)}
    out = []
    for i, tr in enumerate(g.triples):
        spots = [where.get(mp[u]) for u in tr]
        if None in spots:
            raise InvalidInput(f"triple {i} uses a colour outside the d-colours")
        js = {j for j, _ in spots}
        if len(js) != 1 or [r for _, r in spots] != [0, 1, 2]:
            raise InvalidInput(f"triple {i} is not coloured d^j_1, d^j_2, d^j_3 in order")
        out.append(js.pop())
    if len(set(out)) != len(out):
        raise InvalidInput("two triples use the same colour triple")
    return out


def thm3_lists(g: Thm3Gadget, psi) -> tuple[ListAssignment, Lambda, ColourClasses]:
    p = g.palette
    if g.t - 5 * g.a - 9 < 0:
        raise InvalidInput("lists need t >= 5a+9")
    mp = _psi_map(g.A, psi)
    used = set(triple_indices(g, mp))
    all_d = frozenset(c for tr in p.d for c in tr)
    base_a = all_d | frozenset(p.b)
    base_b = set(p.b) | {p.c[j] for j in used}
    for j in range(len(p.d)):
        if j not in used:
            base_b |= set(p.cc[j])
    base_b = frozenset(base_b)
    amask = to_mask(g.A)
    lists = [frozenset()] * g.graph.n
    for v in g.A:
        lists[v] = base_a
    for v in g.B:
        lists[v] = base_b | {mp[u] for u in bits(g.graph.adj[v] & amask)}
    lam, classes = thm3_classes(g)
    return ListAssignment(tuple(lists)), lam, classes


def canonical_psi_thm3(g: Thm3Gadget) -> dict:
    p = g.palette
    return {u: p.d[i][r] for i, tr in enumerate(g.triples) for r, u in enumerate(tr)}


def thm3_domain(g: Thm3Gadget):
    p = g.palette
    for js in permutations(range(len(p.d)), len(g.triples)):
        yield tuple(p.d[j][r] for j in js for r in range(3))


def verify_thm3_certificate(g: Thm3Gadget) -> CertificateReport:
    return _pattern_certificate(g.graph, g.A, g.B, g.t, g.patterns(),
                                3 * (g.a + 2), g.t - g.a - 3)


def pattern_clique_thm3(psi: Sequence[int], d_triples, a: int) -> tuple | None:
    """Vertices coloured d^j_1, d^j_2, d^j_3 for the first a+2 indices j
    whose triple is fully used, flattened triple by triple."""
    where = {col: v for v, col in enumerate(psi)}
    full = [tr for tr in d_triples if all(c in where for c in tr)]
    if len(full) < a + 2:
        return None
    return tuple(where[c] for tr in full[:a + 2] for c in tr)


def thm3_family(g: Thm3Gadget) -> ObstacleFamily:
    lam, classes = thm3_classes(g)
    return ObstacleFamily(g.graph, g.A, lam, classes,
                          lambda psi: thm3_lists(g, psi)[0], lambda: thm3_domain(g))


def thm3_h2(g: Thm3Gadget) -> tuple[Graph, ListAssignment]:
    p = g.palette
    cols = set(p.b) | {c for tr in p.d for c in tr}
    return Graph.complete(g.t - 1), ListAssignment.uniform(g.t - 1, cols)


# -- extension checks shared by both gadgets --------------------------------------

def extension_sdr(graph: Graph, lists: ListAssignment, psi: Mapping[int, int],
                  clique: Sequence[int]) -> SDRResult:
    """Distinct representatives for ``clique`` after removing the colours
    psi places on each vertex's neighbours."""
    avail = []
    for v in clique:
        used = {psi[u] for u in bits(graph.adj[v]) if u in psi}
        avail.append(set(lists[v]) - used)
    return clique_sdr(avail)


# -- witness records -----------------------------------------------------------

def _families_json(g) -> list:
    return [{"X": list(x), "B_X": list(bs)} for x, bs in g.families.items()]


def gadget_record(g) -> dict:
    if isinstance(g, Thm2Gadget):
        p = g.palette
        return {"kind": "thm2", "a": g.a, "t": g.t, "m": g.m, "threshold": g.t1,
                "in_regime": g.in_regime, "A": list(g.A), "B": list(g.B),
                "families": _families_json(g),
                "palette": {"b": list(p.b), "a": list(p.a), "c": list(p.c)}}
    if isinstance(g, Thm3Gadget):
        p = g.palette
        return {"kind": "thm3", "a": g.a, "t": g.t, "m": g.m, "threshold": g.t2,
                "in_regime": g.in_regime, "triples": [list(tr) for tr in g.triples],
                "B": list(g.B), "families": _families_json(g),
                "palette": {"b": list(p.b), "d": [list(tr) for tr in p.d], "c": list(p.c),
                            "cc": [list(tr) for tr in p.cc]}}
    raise InvalidInput(f"not a pattern gadget: {type(g).__name__}")


def gadget_witness(g, psi=None) -> Witness:
    """Bundle H_1 with its lists for psi (canonical by default). The
    non-colourable graph is the composition of H_1 onto K_{t-1}; the
    ``gadget`` record lets verification check every psi instead."""
    if isinstance(g, Thm2Gadget):
        lists, lam, classes = thm2_lists(g, psi or canonical_psi_thm2(g))
    else:
        lists, lam, classes = thm3_lists(g, psi or canonical_psi_thm3(g))
    kind = gadget_record(g)["kind"]
    return Witness(g.graph, lam, classes, lists, g.t,
                   provenance=f"{kind} gadget a={g.a} t={g.t}", gadget=gadget_record(g))


def gadget_from_record(record: dict, graph: Graph):
    """Rebuild the gadget view on ``graph`` (attachments come from the graph)."""
    kind = record.get("kind")
    a, t = record["a"], record["t"]
    B = tuple(record["B"])
    if kind == "thm2":
        A = tuple(record["A"])
        g = Thm2Gadget(graph, a, t, A, B, {})
    elif kind == "thm3":
        triples = tuple(tuple(tr) for tr in record["triples"])
        g = Thm3Gadget(graph, a, t, triples, B, {})
    else:
        raise InvalidInput(f"unknown gadget kind {kind!r}")
    graph.check_vertices(list(g.A) + list(B))
    att = _attachments(graph, g.A, B)
    fams = {x: att.get(x, ()) for x in g.patterns()}
    g = type(g)(**{**g.__dict__, "families": fams})
    stored = record.get("palette")
    if stored is not None and stored != gadget_record(g)["palette"]:
        raise InvalidInput("gadget palette does not match its parameters")
    return g


def certificate_for(w: Witness) -> tuple[bool, str]:
    g = gadget_from_record(w.gadget, w.graph)
    rep = verify_thm2_certificate(g) if isinstance(g, Thm2Gadget) else verify_thm3_certificate(g)
    return rep.ok, rep.reason


def verify_gadget_record(w: Witness, psi_cap: int = DEFAULT_PSI_CAP) -> tuple[bool, str]:
    """Non-colourability of the composition onto K_{t-1}, checked per psi.

    The selector always finds its pattern in a proper colouring of K_{t-1}
    from L' (counting), and every pattern colouring psi of A is blocked in
    H_1 under its lists; together every colouring of the composition fails.
    """
    g = gadget_from_record(w.gadget, w.graph)
    is2 = isinstance(g, Thm2Gadget)
    fam = thm2_family(g) if is2 else thm3_family(g)
    h2, l2 = thm2_h2(g) if is2 else thm3_h2(g)
    rep = is_valid_assignment(Graph.complete(1), ListAssignment((l2[0],)), fam.lam, fam.classes)
    if not rep:
        return False, f"K_(t-1) lists are not valid: {rep.reason}"
    non_b = (g.t - 1) - len(g.palette.b)
    if is2:
        need, have = 2 * g.a + 5, non_b
        if have < need:
            return False, f"only {have} a-coloured vertices guaranteed, pattern needs {need}"
    else:
        # fewer than a+2 full d-triples caps d-coloured vertices at 5a+7
        if non_b <= 3 * (g.a + 1) + 2 * (g.a + 2):
            return False, f"only {non_b} d-coloured vertices guaranteed, need {5 * g.a + 8}"
    count = 0
    for psi in fam.domain():
        count += 1
        if count > psi_cap:
            raise CapExceeded(f"more than {psi_cap} pattern colourings", count)
        lists = fam.respond(psi)
        rep = is_valid_assignment(g.graph, lists, fam.lam, fam.classes)
        if not rep:
            return False, f"lists for psi={psi} invalid: {rep.reason}"
        if find_coloring(g.graph, lists, dict(zip(g.A, psi))) is not None:
            return False, f"psi={psi} extends to H_1"
    return True, f"all {count} pattern colourings of A are blocked; selector guaranteed by counting"


# -- copy constructions over a two-clique graph --------------------------------------

def choose_eps_prime(eps, q: int = 1) -> Fraction:
    """eps' = eps / (2(q+4)), which satisfies (2 - q eps')/(1 + 2 eps') >= 2 - eps/2."""
    e = Fraction(eps)
    if not 0 < e < 1:
        raise InvalidInput("eps must lie in (0, 1)")
    if not isinstance(q, int) or q < 1:
        raise InvalidInput("q must be a positive integer")
    ep = e / (2 * (q + 4))
    if (2 - q * ep) / (1 + 2 * ep) < 2 - e / 2:
        raise AssertionError(f"eps' = {ep} fails the required inequality")
    return ep


@dataclass
class CopyConstruction:
    """Shared A (vertices 0..n-1) plus one copy B_c per injection c.

    ``graph``/``lists`` are None when the construction was not materialized;
    the per-copy verifier works from ``steiner`` alone.
    """
    kind: str
    steiner: SteinerGraph
    lam: Lambda
    classes: ColourClasses
    universe: tuple[int, ...]
    a_list: frozenset
    b: int
    params: dict
    graph: Graph | None = None
    lists: ListAssignment | None = None
    copies: list = field(default_factory=list)     # (injection, B_c vertices)

    def copy_lists(self, c) -> ListAssignment:
        """Lists on the vertices of H (steiner order A then B) for copy c."""
        return _copy_lists(self.steiner, self.universe, self.a_list, c, self.b)

    def witness(self) -> Witness:
        if self.graph is None:
            raise InvalidInput("construction was not materialized")
        n = self.steiner.n
        comp = {"h2_n": n, "copies": [
            {"psi": [list(x) if isinstance(x, tuple) else x for x in c],
             "clique": list(range(n)), "vertices": list(range(n)) + list(bc)}
            for c, bc in self.copies]}
        gadget = {"kind": self.kind, "b": self.b, **self.params}
        return Witness(self.graph, self.lam, self.classes, self.lists, self.steiner.t,
                       provenance=f"{self.kind} construction", gadget=gadget, compose=comp)


def _non_neighbours_in_a(h: SteinerGraph) -> list[list[int]]:
    """For each B vertex of H (in order), the indices of A vertices it misses."""
    return [[i for i, x in enumerate(h.A) if not h.graph.has_edge(x, y)] for y in h.B]


def _copy_lists(h: SteinerGraph, universe, a_list, c, b) -> ListAssignment:
    miss = _non_neighbours_in_a(h)
    lists = [frozenset()] * h.graph.n
    for x in h.A:
        lists[x] = frozenset(a_list)
    full = frozenset(universe)
    for y, idx in zip(h.B, miss):
        gone = set()
        for i in idx:
            gone.update(c[i] if b > 1 else (c[i],))
        lists[y] = full - gone
    return ListAssignment(tuple(lists))


def _injections(h: SteinerGraph, pool, b: int):
    items = pool if b == 1 else list(combinations(pool, b))
    return permutations(items, h.n)


def _materialize(con: CopyConstruction, copy_cap: int) -> None:
    h = con.steiner
    n = h.n
    pool = sorted(con.a_list)
    items = len(pool) if con.b == 1 else math.comb(len(pool), con.b)
    count = math.perm(items, n)
    if count > copy_cap:
        raise CapExceeded(f"construction needs {count} copies, cap is {copy_cap}", count)
    pos = {x: i for i, x in enumerate(h.A)}
    posb = {y: i for i, y in enumerate(h.B)}
    edges = [(pos[u], pos[v]) for u, v in combinations(h.A, 2)]
    h_edges = list(h.graph.edges())
    lists: list = [frozenset(con.a_list)] * n
    nxt = n
    for c in _injections(h, pool, con.b):
        local = con.copy_lists(c)
        bc = tuple(range(nxt, nxt + n))
        image = {**pos, **{y: nxt + i for y, i in posb.items()}}
        edges += [(image[u], image[v]) for u, v in h_edges if not (u in pos and v in pos)]
        lists += [local[y] for y in h.B]
        con.copies.append((c, bc))
        nxt += n
    labels = {i: f"A{i}" for i in range(n)}
    con.graph = Graph.from_edges(nxt, edges, labels)
    con.lists = ListAssignment(tuple(lists))


def build_thmkq(h: SteinerGraph, q: int, ks: Sequence[int], copy_cap: int = DEFAULT_COPY_CAP,
                strict: bool = True, materialize: bool = True) -> CopyConstruction:
    """Pools X_j (k_j colours) and Y_j (floor(eps' n) colours), eps' = h.eps.
    A gets the union of the X_j; y in B_c loses c(x) for every x it misses."""
    if not isinstance(q, int) or q < 1 or len(ks) != q:
        raise InvalidInput("need q >= 1 and exactly q values k_j")
    if any(not isinstance(k, int) or k < 1 for k in ks):
        raise InvalidInput("every k_j must be a positive integer")
    s = h.slack
    nxt = 0
    xs, ys = [], []
    for k in ks:
        xs.append(tuple(range(nxt, nxt + k)))
        nxt += k
    for _ in ks:
        ys.append(tuple(range(nxt, nxt + s)))
        nxt += s
    universe = tuple(range(nxt))
    bound = 2 * h.n - 1
    if len(universe) > bound and strict:
        raise InvalidInput(f"sum(k) + q*floor(eps'n) = {len(universe)} exceeds 2n-1 = {bound}; "
                           "the pigeonhole step would not apply")
    a_list = frozenset(c for x in xs for c in x)
    if len(a_list) < h.n:
        raise InvalidInput(f"only {len(a_list)} colours for the {h.n}-clique A")
    lam, classes = aligned([(k, set(x) | set(y)) for k, x, y in zip(ks, xs, ys)])
    params = {"n": h.n, "eps_prime": str(h.eps), "slack": s, "q": q, "ks": list(ks),
              "X": [list(x) for x in xs], "Y": [list(y) for y in ys],
              "universe_size": len(universe), "pigeonhole_bound": bound}
    con = CopyConstruction("thmkq", h, lam, classes, universe, a_list, 1, params)
    if materialize:
        _materialize(con, copy_cap)
    return con


def build_ab(h: SteinerGraph, m: int, copy_cap: int = DEFAULT_COPY_CAP,
             materialize: bool = True) -> CopyConstruction:
    """Universe [1..2nm-1]; A gets everything, y in B_c loses c(x) (an
    m-set) for every x it misses. Decides m-fold colourability."""
    if not isinstance(m, int) or m < 1:
        raise InvalidInput("m must be a positive integer")
    n, s = h.n, h.slack
    universe = tuple(range(1, 2 * n * m))
    min_size = len(universe) - s * m
    lam, classes = aligned([(min_size, set(universe))])
    params = {"n": n, "eps_prime": str(h.eps), "slack": s, "m": m,
              "universe_size": len(universe), "D_size": math.comb(len(universe), m),
              "min_list_size": min_size}
    con = CopyConstruction("ab", h, lam, classes, universe, frozenset(universe), m, params)
    if materialize:
        _materialize(con, copy_cap)
    return con


@dataclass(frozen=True)
class CopyReport:
    checked: int
    failures: list          # injections whose copy extends, sorted
    usable_sizes: tuple     # distinct sizes of the usable pool on B_c

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures


def verify_copies(con: CopyConstruction, cap: int | None = None) -> CopyReport:
    """For every colouring c of A that a colouring of G could restrict to,
    check that copy B_c cannot be completed. Works without the materialized graph."""
    h = con.steiner
    hA, old = h.graph.induced(h.A)
    la = ListAssignment.uniform(len(old), con.a_list)
    failures, sizes, checked = [], set(), 0
    for c in fold_colourings(hA, la, con.b, cap=cap):
        c = c if con.b > 1 else tuple(x[0] for x in c)
        checked += 1
        lists = con.copy_lists(c)
        if con.b == 1:
            partial = dict(zip(h.A, c))
            avail = [set(lists[y]) - {partial[x] for x in h.A if h.graph.has_edge(x, y)} for y in h.B]
            sizes.add(len(set().union(*avail)))
            if clique_sdr(avail).ok:
                failures.append(c)
        else:
            partial = dict(zip(h.A, c))
            avail = [set(lists[y]).difference(*(partial[x] for x in h.A if h.graph.has_edge(x, y)))
                     for y in h.B]
            sizes.add(len(set().union(*avail)))
            if find_bfold(h.graph, lists, con.b, partial) is not None:
                failures.append(c)
    return CopyReport(checked, sorted(failures), tuple(sorted(sizes)))
