"""Run the desk-scale checks of the gadget and copy constructions and print a
summary table. Usage: python scripts/reproduce_checks.py [--seed N] [--samples K]"""
from __future__ import annotations

import argparse
import random
import time

from hadlist.colouring import clique_sdr
from hadlist.gadgets import (build_ab, build_thm2, build_thm3, build_thmkq, gadget_witness,
                             thm2_lists, thm3_domain, thm3_lists, verify_copies)
from hadlist.minors import find_kt_minor
from hadlist.obstacles import verify_witness
from hadlist.steiner import cyclic_instance, matching_deleted_join


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def single_class(samples: int, rnd: random.Random) -> str:
    g = build_thm2(0, 52)
    if find_kt_minor(g.graph, 52, budget=None) is not None:
        return "K_52 minor found"
    worst = None
    for _ in range(samples):
        psi = rnd.sample(list(g.palette.a), len(g.A))
        lists = thm2_lists(g, psi)[0]
        used = dict(zip(g.A, psi))
        avail = [set(lists[v]) - {used[u] for u in g.A if g.graph.has_edge(u, v)} for v in g.B]
        res = clique_sdr(avail)
        if res.ok:
            return f"psi={psi} extends"
        worst = (len(res.hall_violator), len(res.violator_pool))
    return f"no K_52 minor; {samples} colourings blocked, violator {worst[0]} over {worst[1]}"


def triple_class() -> str:
    g = build_thm3(0, 48)
    rep = verify_witness(gadget_witness(g), mode="exact-minor")
    n_psi = sum(1 for _ in thm3_domain(g))
    return f"{rep['overall']}; {n_psi} triple colourings checked"


def many_class() -> str:
    con = build_thmkq(cyclic_instance(4, 2), 1, [5])
    rep = verify_copies(con)
    return f"{'blocked' if rep.ok else 'FAILED'}: {rep.checked} injections, universe {len(con.universe)}"


def fold() -> str:
    con = build_ab(matching_deleted_join(2), 2)
    rep = verify_copies(con)
    return f"{'blocked' if rep.ok else 'FAILED'}: {rep.checked} injections from {con.params['D_size']} pairs"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=50)
    args = ap.parse_args()
    rnd = random.Random(args.seed)
    rows = [("single-class gadget a=0 t=52", lambda: single_class(args.samples, rnd)),
            ("triple gadget a=0 t=48", triple_class),
            ("many-class copies n=4", many_class),
            ("2-fold copies n=2", fold)]
    for name, fn in rows:
        result, secs = timed(fn)
        print(f"{name:32s} {secs:7.2f}s  {result}")


if __name__ == "__main__":
    main()
