"""Exhaustive search for non-colourable (lambda, C)-assignments on small graphs.

Every class with quota 1 is a single shared colour. A class with quota k > 1
draws from a universe of ``cap`` colours, each vertex taking exactly k of them
(larger lists only make colouring easier). Within a class, colours already
in use are grouped by which vertices hold them; a new list only decides how
many colours to take from each group, so each assignment is visited once per
orbit under colour permutations.
Vertices of degree < k_lambda are peeled off first: they can always be
coloured last, whatever their lists.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .colouring import ListAssignment, find_coloring
from .errors import CapExceeded, InvalidInput
from .graph import Graph, bits
from .lambdas import ColourClasses, Lambda

DEFAULT_LEAF_BUDGET = 200_000


@dataclass(frozen=True)
class ChoosabilityVerdict:
    status: str                         # "choosable" | "witness" | "cap-exceeded"
    lists: ListAssignment | None = None
    classes: ColourClasses | None = None
    caps: tuple[int, ...] = ()
    checked: int = 0

    @property
    def choosable(self) -> bool:
        return self.status == "choosable"


def core(g: Graph, k: int) -> list[int]:
    """Vertices of the k-core (repeatedly drop vertices of degree < k)."""
    alive = g.full
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if (g.adj[v] & alive).bit_count() < k:
                alive &= ~(1 << v)
                changed = True
    return list(bits(alive))


def _class_layout(lam: Lambda, caps: Sequence[int]):
    """Colour ids per class: singletons first-come, then blocks of size cap."""
    nxt = 0
    classes = []
    for quota, cap in zip(lam.parts, caps):
        size = 1 if quota == 1 else cap
        classes.append(tuple(range(nxt, nxt + size)))
        nxt += size
    return classes


def lambda_choosable_small(g: Graph, lam: Lambda, universe_caps: Sequence[int] | None = None,
                           budget: int | None = DEFAULT_LEAF_BUDGET) -> ChoosabilityVerdict:
    """Decide lambda-choosability of a small graph relative to per-class caps.

    Returns the first non-colourable canonical assignment found (status
    "witness"), "choosable" when every canonical assignment is colourable, or
    "cap-exceeded" when more than ``budget`` assignments would be checked.
    """
    n = g.n
    if universe_caps is None:
        caps = tuple(q * max(n, 1) for q in lam.parts)
    else:
        caps = tuple(universe_caps)
        if len(caps) != lam.size:
            raise InvalidInput("one cap per part of lambda is required")
        for q, cap in zip(lam.parts, caps):
            if cap < q:
                raise InvalidInput(f"cap {cap} is smaller than quota {q}")
    layout = _class_layout(lam, caps)
    classes = ColourClasses.of(layout)
    default_list = frozenset(c for q, cls in zip(lam.parts, layout) for c in cls[:q])

    hard = core(g, lam.k)
    if not hard:
        return ChoosabilityVerdict("choosable", None, classes, caps, 0)
    sub, old = g.induced(hard)
    multi = [i for i, q in enumerate(lam.parts) if q > 1]
    fixed = frozenset(layout[i][0] for i, q in enumerate(lam.parts) if q == 1)
    checked = 0

    def group_picks(groups, q):
        """Choose q colours, only caring how many come from each group."""
        def rec(gi, left, acc):
            if left == 0:
                yield acc
                return
            if gi == len(groups):
                return
            members = groups[gi][1]
            for take in range(min(left, len(members)), -1, -1):
                yield from rec(gi + 1, left - take, acc + [(gi, take)])
        yield from rec(0, q, [])

    def vertex_choices(v, state):
        """Every choice of k_i colours per multi-colour class, one per orbit
        under colour permutations that fix the lists chosen so far."""
        def rec(idx, acc, new_state):
            if idx == len(multi):
                yield frozenset(acc), new_state
                return
            i = multi[idx]
            groups, fresh_at = state[idx]
            cls = layout[i]
            pool = tuple(range(fresh_at, caps[i]))
            all_groups = list(groups) + [(0, pool)]
            for picks in group_picks(all_groups, lam.parts[i]):
                chosen = []
                regrouped = {sig: list(cols) for sig, cols in groups}
                nxt_fresh = fresh_at
                for gi, take in picks:
                    sig, cols = all_groups[gi]
                    taken = cols[:take]
                    chosen.extend(taken)
                    if sig == 0:
                        nxt_fresh += take
                    else:
                        regrouped[sig] = [c for c in regrouped[sig] if c not in taken]
                    regrouped.setdefault(sig | 1 << v, []).extend(taken)
                new_groups = tuple(sorted((sg, tuple(cs)) for sg, cs in regrouped.items() if cs))
                yield from rec(idx + 1, acc + [cls[c] for c in chosen],
                               new_state + [(new_groups, nxt_fresh)])
        yield from rec(0, [], [])

    lists: list = [None] * sub.n

    def search(v, state):
        nonlocal checked
        if v == sub.n:
            checked += 1
            if budget is not None and checked > budget:
                raise CapExceeded(f"more than {budget} canonical assignments", checked)
            la = ListAssignment(tuple(lists))
            return None if find_coloring(sub, la) is not None else la
        for pick, new_state in vertex_choices(v, state):
            lists[v] = fixed | pick
            found = search(v + 1, new_state)
            if found is not None:
                return found
        return None

    try:
        found = search(0, [((), 0)] * len(multi))
    except CapExceeded:
        return ChoosabilityVerdict("cap-exceeded", None, classes, caps, checked)
    if found is None:
        return ChoosabilityVerdict("choosable", None, classes, caps, checked)
    full = [default_list] * n
    for i, v in enumerate(old):
        full[v] = found[i]
    return ChoosabilityVerdict("witness", ListAssignment(tuple(full)), classes, caps, checked)
