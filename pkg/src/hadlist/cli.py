"""Command-line interface. Every command prints one JSON report to stdout.

Exit codes: 0 the property holds or the object was built, 1 it fails,
2 a budget or cap ran out (inconclusive), 3 invalid input.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import gadgets, io, steiner
from .colouring import (ListAssignment, find_bfold, find_coloring,
                        is_valid_assignment)
from .errors import BudgetExceeded, InvalidInput
from .lambdas import ColourClasses, leq_order, parse_lambda
from .minors import DEFAULT_BUDGET, find_kt_minor
from .obstacles import (ObstacleFamily, Witness, compose, verify_composed,
                        verify_witness)

log = logging.getLogger("hadlist")

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2, "invalid": 3}


class Done(Exception):
    def __init__(self, verdict: str, details: dict):
        self.verdict = verdict
        self.details = details


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"not a rational number: {text!r}") from None


def _eps(args) -> Fraction:
    if args.eps_den == 0:
        raise InvalidInput("--eps-den must be non-zero")
    return Fraction(args.eps_num, args.eps_den)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from None


# -- build -----------------------------------------------------------------------

def cmd_build_pattern(args):
    if args.kind == "thm2":
        g = gadgets.build_thm2(args.a, args.t)
        cert = gadgets.verify_thm2_certificate(g)
    else:
        g = gadgets.build_thm3(args.a, args.t)
        cert = gadgets.verify_thm3_certificate(g)
    w = gadgets.gadget_witness(g)
    io.dump_json(args.out, io.witness_to_json(w))
    details = {"out": str(args.out), "vertices": g.graph.n, "m": g.m, "lambda": str(w.lam),
               "in_regime": g.in_regime, "certificate": cert.reason}
    raise Done("pass", details)


def _finish_construction(con, out: Path):
    out.mkdir(parents=True, exist_ok=True)
    io.dump_json(out / "steiner.json", io.steiner_to_json(con.steiner))
    io.dump_json(out / "construction.json", {"kind": con.kind, "b": con.b, **con.params})
    details = {"out": str(out), **con.params}
    if con.graph is not None:
        io.dump_json(out / "witness.json", io.witness_to_json(con.witness()))
        details["vertices"] = con.graph.n
        details["copies"] = len(con.copies)
    else:
        details["materialized"] = False
    raise Done("pass", details)


def _construct(kind, h, args, materialize):
    if kind == "thmkq":
        return gadgets.build_thmkq(h, args.q, _ints(args.ks), copy_cap=args.copy_cap,
                                   materialize=materialize)
    return gadgets.build_ab(h, args.m, copy_cap=args.copy_cap, materialize=materialize)


def cmd_build_copies(args):
    if args.kind == "thmkq":
        eps = _eps(args)
        h = steiner.cyclic_instance(args.n, math.floor(eps * args.n), eps)
    else:
        h = steiner.matching_deleted_join(args.n)
    try:
        con = _construct(args.kind, h, args, True)
    except BudgetExceeded as exc:
        log.info("%s; writing the construction without materializing it", exc)
        con = _construct(args.kind, h, args, False)
    _finish_construction(con, Path(args.out))


# -- verify ------------------------------------------------------------------------

def cmd_verify_witness(args):
    w = io.witness_from_json(io.load_json(args.file))
    mode = {"exact": "exact-minor", "certificate": "certificate", "skip": "skip-minor"}[args.minor]
    rep = verify_witness(w, mode=mode, budget=args.budget)
    verdict = {"verified": "pass", "partially verified": "pass",
               "failed": "fail", "inconclusive": "inconclusive"}[rep["overall"]]
    raise Done(verdict, rep)


def cmd_verify_percopy(args):
    d = Path(args.dir)
    meta = io.load_json(d / "construction.json")
    h = io.steiner_from_json(io.load_json(d / "steiner.json"))
    if meta.get("kind") == "thmkq":
        con = gadgets.build_thmkq(h, meta["q"], meta["ks"], materialize=False)
    elif meta.get("kind") == "ab":
        con = gadgets.build_ab(h, meta["m"], materialize=False)
    else:
        raise InvalidInput(f"unknown construction kind {meta.get('kind')!r}")
    rep = gadgets.verify_copies(con, cap=args.cap)
    details = {"checked": rep.checked, "failures": [list(map(list, f)) if con.b > 1 else list(f)
                                                     for f in rep.failures[:20]],
               "usable_pool_sizes": list(rep.usable_sizes)}
    if (d / "witness.json").exists():
        w = io.witness_from_json(io.load_json(d / "witness.json"))
        ok, why = verify_composed(w, con.b)
        details["materialized"] = why
        if not ok:
            raise Done("fail", details)
    raise Done("pass" if rep.ok else "fail", details)


# -- checks ----------------------------------------------------------------------------

def _load_lists(path):
    return io.lists_from_json(io.load_json(path))


def cmd_check_color(args):
    g = io.load_graph(args.graph)
    lists, _ = _load_lists(args.lists)
    partial = {}
    if args.partial:
        raw = io.load_json(args.partial)
        partial = {int(k): v for k, v in raw.items()}
    if args.b == 1:
        col = find_coloring(g, lists, partial)
        found = None if col is None else {str(k): v for k, v in col.items()}
    else:
        res = find_bfold(g, lists, args.b, partial)
        found = None if res is None else {str(k): sorted(v) for k, v in res.assignment.items()}
    if found is None:
        raise Done("fail", {"result": "no coloring", "b": args.b})
    raise Done("pass", {"result": "coloring found", "b": args.b, "coloring": found})


def cmd_check_assignment(args):
    g = io.load_graph(args.graph)
    lists, classes = _load_lists(args.lists)
    if classes is None:
        raise InvalidInput("the lists file needs a 'classes' entry")
    rep = is_valid_assignment(g, lists, parse_lambda(args.lam), classes)
    raise Done("pass" if rep.ok else "fail",
               {"reason": rep.reason, "vertex": rep.vertex, "class_index": rep.class_index})


def cmd_minor(args):
    g = io.load_graph(args.graph)
    try:
        model = find_kt_minor(g, args.t, budget=args.budget)
    except BudgetExceeded as exc:
        raise Done("inconclusive", {"result": str(exc)})
    if model is None:
        raise Done("pass", {"result": f"no K_{args.t} minor"})
    raise Done("fail", {"result": f"K_{args.t} minor found",
                        "branch_sets": [sorted(z) for z in model.branch_sets]})


def cmd_order(args):
    lhs, rhs = parse_lambda(args.lhs), parse_lambda(args.rhs)
    ok = leq_order(lhs, rhs)
    raise Done("pass" if ok else "fail", {"lhs": str(lhs), "rhs": str(rhs), "leq": ok})


def cmd_steiner_sample(args):
    eps = _fraction(args.eps)
    h = steiner.sample_steiner(args.n, eps, args.seed, budget=args.budget)
    if h is None:
        raise Done("inconclusive", {"result": f"no verified instance in {args.budget} attempts"})
    details = {"t": h.t, "slack": h.slack}
    if args.out:
        io.dump_json(args.out, io.steiner_to_json(h))
        details["out"] = str(args.out)
    raise Done("pass", details)


# -- compose -------------------------------------------------------------------------------

def family_from_json(d: dict) -> ObstacleFamily:
    """Table-driven family: {"h1", "k", "lambda", "classes", "responses": [{"psi", "lists"}]}."""
    h1 = io.graph_from_json(d["h1"])
    table = {}
    for row in d["responses"]:
        lists, _ = io.lists_from_json(row)
        table[tuple(row["psi"])] = lists

    def respond(psi):
        if tuple(psi) not in table:
            raise InvalidInput(f"family has no response for psi={tuple(psi)}")
        return table[tuple(psi)]

    return ObstacleFamily(h1, tuple(d["k"]), parse_lambda(d["lambda"]),
                          ColourClasses.of(d["classes"]), respond, lambda: iter(table))


def table_selector(fam: ObstacleFamily, h2):
    """Pick the first clique of h2 (lexicographic) whose colours have a response."""
    p = len(fam.k)
    cliques = [c for c in combinations(range(h2.n), p) if h2.is_clique_mask(sum(1 << v for v in c))]
    known = set(fam.domain())

    def select(psi):
        for c in cliques:
            if tuple(psi[v] for v in c) in known:
                return c
        raise InvalidInput(f"no clique of h2 carries a tabulated colouring under {psi}")
    return select


def cmd_compose(args):
    fam = family_from_json(io.load_json(args.family))
    h2 = io.load_graph(args.h2)
    l2, _ = _load_lists(args.lists)
    comp = compose(fam, h2, l2, table_selector(fam, h2), copy_cap=args.copy_cap)
    w = Witness(comp.graph, fam.lam, fam.classes, comp.lists, args.t or 0,
                provenance="compose", compose=comp.provenance())
    io.dump_json(args.out, io.witness_to_json(w))
    raise Done("pass", {"out": str(args.out), "vertices": comp.graph.n,
                        "copies": len(comp.copies), "warning": comp.warning})


# -- wiring ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def add_common(parser, default):
        # leaves use SUPPRESS so they do not overwrite options given before the subcommand
        parser.add_argument("--quiet", action="store_true", default=default(False),
                            help="suppress prose on stderr")
        parser.add_argument("--threads", type=int, default=default(1),
                            help="accepted for compatibility; solvers run single-threaded")

    common = argparse.ArgumentParser(add_help=False)
    add_common(common, lambda _: argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="hadlist", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    add_common(p, lambda v: v)
    sub = p.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build").add_subparsers(dest="kind", required=True)
    for kind in ("thm2", "thm3"):
        b = build.add_parser(kind, parents=[common])
        b.add_argument("--a", type=int, required=True)
        b.add_argument("--t", type=int, required=True)
        b.add_argument("--out", required=True)
        b.set_defaults(func=cmd_build_pattern)
    b = build.add_parser("thmkq", parents=[common])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--eps-num", type=int, required=True)
    b.add_argument("--eps-den", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--ks", required=True, help="comma-separated k_1..k_q")
    b.add_argument("--copy-cap", type=int, default=gadgets.DEFAULT_COPY_CAP)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build_copies)
    b = build.add_parser("ab", parents=[common])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--copy-cap", type=int, default=gadgets.DEFAULT_COPY_CAP)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build_copies)

    verify = sub.add_parser("verify").add_subparsers(dest="what", required=True)
    v = verify.add_parser("witness", parents=[common])
    v.add_argument("file")
    v.add_argument("--minor", choices=("exact", "certificate", "skip"), default="exact")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.set_defaults(func=cmd_verify_witness)
    v = verify.add_parser("percopy", parents=[common])
    v.add_argument("dir")
    v.add_argument("--cap", type=int, default=None)
    v.set_defaults(func=cmd_verify_percopy)

    check = sub.add_parser("check").add_subparsers(dest="what", required=True)
    c = check.add_parser("color", parents=[common])
    c.add_argument("--graph", required=True)
    c.add_argument("--lists", required=True)
    c.add_argument("--b", type=int, default=1)
    c.add_argument("--partial")
    c.set_defaults(func=cmd_check_color)
    c = check.add_parser("assignment", parents=[common])
    c.add_argument("--graph", required=True)
    c.add_argument("--lists", required=True)
    c.add_argument("--lambda", dest="lam", required=True)
    c.set_defaults(func=cmd_check_assignment)

    m = sub.add_parser("minor", parents=[common])
    m.add_argument("--graph", required=True)
    m.add_argument("--t", type=int, required=True)
    m.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    m.set_defaults(func=cmd_minor)

    o = sub.add_parser("order", parents=[common])
    o.add_argument("--lhs", required=True)
    o.add_argument("--rhs", required=True)
    o.set_defaults(func=cmd_order)

    st = sub.add_parser("steiner").add_subparsers(dest="what", required=True)
    s = st.add_parser("sample", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps", required=True, help="rational, e.g. 1/3")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_steiner_sample)

    cp = sub.add_parser("compose", parents=[common])
    cp.add_argument("--family", required=True)
    cp.add_argument("--h2", required=True)
    cp.add_argument("--lists", required=True)
    cp.add_argument("--out", required=True)
    cp.add_argument("--t", type=int, default=None, help="minor order recorded in the witness")
    cp.add_argument("--copy-cap", type=int, default=gadgets.DEFAULT_COPY_CAP)
    cp.set_defaults(func=cmd_compose)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT["invalid"]
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "quiet", "threads")}
    start = time.perf_counter()
    try:
        args.func(args)
        verdict, details = "fail", {"error": "command produced no verdict"}
    except Done as done:
        verdict, details = done.verdict, done.details
    except InvalidInput as exc:
        verdict, details = "invalid", {"error": str(exc)}
    except BudgetExceeded as exc:
        verdict, details = "inconclusive", {"error": str(exc)}
    report = {"command": " ".join(x for x in (args.command, getattr(args, "kind", None),
                                              getattr(args, "what", None)) if x),
              "inputs": inputs,
              "verdict": "fail" if verdict == "invalid" else verdict,
              "details": details,
              "runtime_ms": round((time.perf_counter() - start) * 1000, 3)}
    print(json.dumps(report, default=str))
    if not args.quiet:
        log.info("%s: %s", report["command"], verdict)
    return EXIT[verdict]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
