"""Obstacles, the clique-sum composition that turns them into non-choosable
graphs, the apex induction step, and witness verification."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .colouring import (ListAssignment, find_bfold, find_coloring, fold_colourings,
                        is_valid_assignment, proper_colourings)
from .errors import BudgetExceeded, CapExceeded, InvalidInput
from .graph import Graph, bits, to_mask
from .lambdas import ColourClasses, Lambda, aligned
from .minors import DEFAULT_BUDGET, find_kt_minor

log = logging.getLogger(__name__)

DEFAULT_COPY_CAP = 10 ** 6

Psi = tuple  # colours of the clique vertices, aligned with the clique order


@dataclass(frozen=True)
class ObstacleFamily:
    """A graph ``h1`` with a clique ``k`` and a rule mapping each clique
    colouring psi to lists of ``h1`` under which psi does not extend.

    ``domain`` optionally enumerates every psi the family is meant to answer.
    """
    h1: Graph
    k: tuple[int, ...]
    lam: Lambda
    classes: ColourClasses
    respond: Callable[[Psi], ListAssignment]
    domain: Callable[[], Iterable[Psi]] | None = None

    def __post_init__(self):
        if not self.h1.is_clique_mask(to_mask(self.k)):
            raise InvalidInput("obstacle family clique k is not a clique of h1")


def _psi_partial(fam: ObstacleFamily, psi: Psi, lists: ListAssignment) -> dict:
    if len(psi) != len(fam.k):
        raise InvalidInput(f"psi has {len(psi)} colours for a {len(fam.k)}-clique")
    if len(set(psi)) != len(psi):
        raise InvalidInput(f"psi {psi} is not proper on the clique")
    for v, col in zip(fam.k, psi):
        if col not in lists[v]:
            raise InvalidInput(f"psi colour {col} is not in the list of clique vertex {v}")
    return dict(zip(fam.k, psi))


def check_obstacle(fam: ObstacleFamily, psi: Psi) -> bool:
    """True iff psi on the clique cannot be extended under ``respond(psi)``."""
    lists = fam.respond(tuple(psi))
    partial = _psi_partial(fam, tuple(psi), lists)
    return find_coloring(fam.h1, lists, partial) is None


@dataclass(frozen=True)
class CopyRecord:
    psi: tuple          # the proper colouring of h2 that activated this copy
    clique: tuple       # K_psi, vertices of h2 aligned with fam.k
    vertices: tuple     # image of each h1 vertex in the composed graph


@dataclass
class Composition:
    graph: Graph
    lists: ListAssignment
    h2_n: int
    copies: list[CopyRecord]
    warning: str | None = None

    def provenance(self) -> dict:
        return {
            "h2_n": self.h2_n,
            "copies": [{"psi": list(c.psi), "clique": list(c.clique), "vertices": list(c.vertices)}
                       for c in self.copies],
        }


def compose(fam: ObstacleFamily, h2: Graph, l2: ListAssignment,
            select: Callable[[tuple], Sequence[int]],
            copy_cap: int = DEFAULT_COPY_CAP) -> Composition:
    """Glue one copy of ``fam.h1`` per proper ``l2``-colouring psi of ``h2``.

    Copy psi is attached along ``select(psi)`` (identified with ``fam.k`` in
    order) and its other vertices get the lists ``respond(psi|K)``. The result
    is not colourable from its lists.
    """
    report = is_valid_assignment(h2, l2, fam.lam, fam.classes)
    if not report:
        raise InvalidInput(f"l2 is not a (lambda, C)-assignment of h2: {report.reason}")
    p = len(fam.k)
    k_index = {v: i for i, v in enumerate(fam.k)}
    private = [v for v in range(fam.h1.n) if v not in k_index]
    edges = list(h2.edges())
    lists = list(l2.lists[:h2.n])
    copies: list[CopyRecord] = []
    nxt = h2.n
    for psi in proper_colourings(h2, l2, cap=copy_cap):
        clique = tuple(select(psi))
        if len(clique) != p or len(set(clique)) != p or not h2.is_clique_mask(to_mask(clique)):
            raise InvalidInput(f"select({psi}) did not return a {p}-clique of h2")
        psi_k = tuple(psi[v] for v in clique)
        if not check_obstacle(fam, psi_k):
            raise InvalidInput(f"no obstacle for psi={psi} on clique {clique}")
        resp = fam.respond(psi_k)
        image = [0] * fam.h1.n
        for v in fam.k:
            image[v] = clique[k_index[v]]
        for v in private:
            image[v] = nxt
            lists.append(resp[v])
            nxt += 1
        edges.extend((image[u], image[v]) for u, v in fam.h1.edges()
                     if not (u in k_index and v in k_index))
        copies.append(CopyRecord(tuple(psi), clique, tuple(image)))
    if not copies:
        msg = "h2 has no proper l2-colouring; composition is h2 itself"
        log.warning(msg)
        return Composition(h2, l2, h2.n, [], msg)
    graph = Graph.from_edges(nxt, edges)
    return Composition(graph, ListAssignment(tuple(lists)), h2.n, copies)


# -- witnesses ---------------------------------------------------------------

@dataclass
class Witness:
    """A graph with lists claimed to be (lam, classes)-valid, non-colourable,
    and K_t-minor-free. ``gadget``/``compose`` carry construction records
    that enable per-copy verification."""
    graph: Graph
    lam: Lambda
    classes: ColourClasses
    lists: ListAssignment
    t: int
    provenance: str = ""
    verification: dict = field(default_factory=dict)
    gadget: dict | None = None
    compose: dict | None = None

    @property
    def verified(self) -> bool:
        return self.verification.get("overall") == "verified"


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def verify_witness(w: Witness, mode: str = "exact-minor",
                   budget: int | None = DEFAULT_BUDGET) -> dict:
    """Run the assignment, non-colourability and minor checks; record the
    per-check outcome in ``w.verification`` and return it."""
    if mode not in ("exact-minor", "certificate", "skip-minor"):
        raise InvalidInput(f"unknown verification mode {mode!r}")
    report: dict = {}
    details: dict = {}
    try:
        a = is_valid_assignment(w.graph, w.lists, w.lam, w.classes)
        report["assignment"] = _status(a.ok)
        if not a.ok:
            details["assignment"] = a.reason
    except InvalidInput as exc:
        report["assignment"] = "fail"
        details["assignment"] = str(exc)

    try:
        ok, why = _verify_noncolourable(w)
        report["coloring"] = _status(ok)
        details["coloring"] = why
    except (BudgetExceeded, CapExceeded) as exc:
        report["coloring"] = "inconclusive"
        details["coloring"] = str(exc)

    if mode == "skip-minor":
        report["minor"] = "skipped"
    else:
        report["minor"], details["minor"] = _verify_minor(w, mode, budget)

    values = list(report.values())
    if "fail" in values:
        overall = "failed"
    elif "inconclusive" in values:
        overall = "inconclusive"
    elif "skipped" in values:
        overall = "partially verified"
    else:
        overall = "verified"
    report["overall"] = overall
    w.verification = dict(report)
    return {**report, "details": details}


def _verify_minor(w: Witness, mode: str, budget):
    if mode == "certificate":
        if w.gadget and w.gadget.get("kind") in ("thm2", "thm3"):
            from . import gadgets
            ok, why = gadgets.certificate_for(w)
            # a failing certificate proves nothing either way
            return ("pass" if ok else "inconclusive"), why
        if w.compose:
            return clique_sum_certificate(w, budget)
    try:
        model = find_kt_minor(w.graph, w.t, budget=budget)
    except BudgetExceeded as exc:
        return "inconclusive", str(exc)
    if model is None:
        return "pass", f"no K_{w.t} minor (exhaustive)"
    return "fail", f"K_{w.t} model found: {[sorted(z) for z in model.branch_sets]}"


def clique_sum_certificate(w: Witness, budget=DEFAULT_BUDGET) -> tuple[str, str]:
    """K_t-minor-freeness of a composed graph from its pieces: the base and
    each copy (its clique plus private vertices) are glued along cliques, so
    it suffices that every distinct piece is K_t-minor-free."""
    n2 = w.compose["h2_n"]
    g = w.graph
    owner = [-1] * g.n
    pieces = [list(range(n2))]
    for i, rec in enumerate(w.compose["copies"]):
        private = [v for v in rec["vertices"] if v >= n2]
        clique = [v for v in rec["clique"]]
        for v in private:
            if owner[v] != -1:
                return "inconclusive", f"vertex {v} belongs to two copies"
            owner[v] = i
        if not g.is_clique_mask(to_mask(clique)):
            return "inconclusive", f"copy {i} is not glued along a clique"
        allowed = to_mask(private) | to_mask(clique)
        if any(g.adj[v] & ~allowed for v in private):
            return "inconclusive", f"copy {i} has edges leaving its piece"
        pieces.append(clique + private)
    if any(o == -1 for o in owner[n2:]):
        return "inconclusive", "some vertex lies in no copy"
    seen = set()
    for verts in pieces:
        sub, _ = g.induced(verts)
        key = tuple(sub.adj)
        if key in seen:
            continue
        seen.add(key)
        try:
            model = find_kt_minor(sub, w.t, budget=budget)
        except BudgetExceeded as exc:
            return "inconclusive", str(exc)
        if model is not None:
            # pieces are induced subgraphs, so this minor lives in the whole graph
            return "fail", f"a piece on {len(verts)} vertices has a K_{w.t} minor"
    return "pass", f"{len(seen)} distinct clique-sum pieces, none with a K_{w.t} minor"


def _verify_noncolourable(w: Witness) -> tuple[bool, str]:
    if w.gadget and w.gadget.get("kind") in ("thm2", "thm3"):
        from . import gadgets
        return gadgets.verify_gadget_record(w)
    if w.compose:
        b = w.gadget.get("b", 1) if w.gadget else 1
        return verify_composed(w, b)
    col = find_coloring(w.graph, w.lists)
    if col is None:
        return True, "no L-colouring (exhaustive search)"
    return False, f"found L-colouring {col}"


def _key(psi) -> tuple:
    return tuple(tuple(sorted(x)) if isinstance(x, (list, tuple, frozenset)) else x for x in psi)


def verify_composed(w: Witness, b: int = 1, cap: int = DEFAULT_COPY_CAP) -> tuple[bool, str]:
    """Every proper (b-fold) colouring of the base graph must activate a copy
    that blocks its extension; that covers every colouring of the whole graph."""
    n2 = w.compose["h2_n"]
    h2, _ = w.graph.induced(range(n2))
    l2 = ListAssignment(w.lists.lists[:n2])
    by_psi = {_key(c["psi"]): c for c in w.compose["copies"]}
    source = proper_colourings(h2, l2, cap=cap) if b == 1 else fold_colourings(h2, l2, b, cap=cap)
    checked = 0
    for psi in source:
        rec = by_psi.get(_key(psi))
        if rec is None:
            return False, f"no copy for base colouring {psi}"
        verts = list(range(n2)) + [v for v in rec["vertices"] if v >= n2]
        sub, old = w.graph.induced(verts)
        sub_lists = ListAssignment(tuple(w.lists[v] for v in old))
        if b == 1:
            ext = find_coloring(sub, sub_lists, dict(enumerate(psi)))
        else:
            ext = find_bfold(sub, sub_lists, b, dict(enumerate(psi)))
        if ext is not None:
            return False, f"copy for {psi} does not block its extension"
        checked += 1
    return True, f"all {checked} base colourings blocked by their copies"


def certify_h_upper(w: Witness) -> tuple[Lambda, int]:
    """From a verified witness: every K_t-minor-free graph being lam-choosable
    fails at t = w.t, so h(lam) <= w.t - 1."""
    if w.verification.get("overall") != "verified":
        raise InvalidInput(f"witness is not fully verified: {w.verification or 'never checked'}")
    bound = w.t - 1
    note = f"h({w.lam}) <= {bound}"
    w.provenance = f"{w.provenance}; {note}" if w.provenance else note
    return w.lam, bound


# -- the apex step -------------------------------------------------------------

def apex_step(w: Witness, require_verified: bool = True,
              copy_cap: int = DEFAULT_COPY_CAP) -> Witness:
    """From a witness for K_{t-1} and {1*(t-4), 2}, build one for K_t and
    {1*(t-3), 2}: add a universal vertex u, a fresh singleton colour, and glue
    copies onto a triangle with lists {c_1..c_{t-3}, a, b}."""
    t = w.t + 1
    if t < 4 or w.lam.parts != (2,) + (1,) * (t - 4):
        raise InvalidInput(f"apex_step needs lambda {{1*{t - 4},2}}, got {w.lam}")
    if require_verified and w.verification.get("coloring") != "pass":
        raise InvalidInput("input witness has no verified non-colourability")
    big = w.classes[0]
    singles = w.classes.classes[1:]
    if any(len(c) != 1 for c in singles):
        raise InvalidInput("singleton parts must use one-colour classes C_i = {c_i}")
    if len(big) < 2:
        raise InvalidInput("the quota-2 class needs at least two colours")
    cs = [next(iter(c)) for c in singles]
    fresh = max(w.classes.colours() | w.lists.colours()) + 1
    cs.append(fresh)
    a, b = sorted(big)[:2]
    g = w.graph
    u = g.n
    h1 = Graph.from_edges(g.n + 1, list(g.edges()) + [(v, u) for v in range(g.n)],
                          {**g.labels, u: "apex"})
    apex_list = frozenset(cs) | {a, b}
    lists1 = ListAssignment(tuple(l | {fresh} for l in w.lists.lists) + (apex_list,))
    lam2, classes2 = aligned([(2, big)] + [(1, {c}) for c in cs])
    c_set = frozenset(cs)
    fam = ObstacleFamily(h1, (u,), lam2, classes2, lambda psi: lists1,
                         lambda: ((c,) for c in cs))
    h2 = Graph.complete(3)
    l2 = ListAssignment.uniform(3, apex_list)

    def select(psi):
        # three distinct colours, only a and b fall outside the c_i
        return (next(v for v in range(3) if psi[v] in c_set),)

    comp = compose(fam, h2, l2, select, copy_cap=copy_cap)
    return Witness(comp.graph, lam2, classes2, comp.lists, t,
                   provenance=f"apex_step({w.provenance or 'input'}) t={t}",
                   compose=comp.provenance())


# -- a small worked family -------------------------------------------------------

def triangle_toy_family():
    """A triangle with clique (0,) and lambda = {2} on the class {1, 2, 3}.

    psi = (c,) answers with the list {c, x} everywhere, x the largest other
    colour: vertices 1 and 2 are both left with x alone. Composed onto an
    edge with lists {1, 2} this gives a 6-vertex non-colourable graph.
    Returns (family, h2, l2, select).
    """
    palette = frozenset({1, 2, 3})
    lam, classes = aligned([(2, palette)])

    def respond(psi):
        c = psi[0]
        x = max(palette - {c})
        return ListAssignment.uniform(3, {c, x})

    fam = ObstacleFamily(Graph.complete(3), (0,), lam, classes, respond,
                         lambda: ((c,) for c in sorted(palette)))
    h2 = Graph.complete(2)
    l2 = ListAssignment.uniform(2, {1, 2})
    return fam, h2, l2, lambda psi: (0,)
