"""JSON and DIMACS serialization for graphs, lists, witnesses and Steiner graphs."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .colouring import ListAssignment
from .errors import InvalidInput
from .graph import Graph
from .lambdas import ColourClasses, format_lambda, parse_lambda
from .obstacles import Witness
from .steiner import SteinerGraph


def _need(d: dict, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise InvalidInput(f"{what} JSON is missing {key!r}")
    return d[key]


# -- graphs -------------------------------------------------------------------

def graph_to_json(g: Graph) -> dict:
    out: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels:
        out["labels"] = {str(v): s for v, s in sorted(g.labels.items())}
    return out


def graph_from_json(d: dict) -> Graph:
    n = _need(d, "n", "graph")
    edges = _need(d, "edges", "graph")
    if not isinstance(n, int):
        raise InvalidInput("graph 'n' must be an integer")
    try:
        pairs = [(int(u), int(v)) for u, v in edges]
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"graph edges must be pairs of integers: {exc}") from None
    labels = {int(k): str(s) for k, s in d.get("labels", {}).items()}
    return Graph.from_edges(n, pairs, labels)


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                if n is not None or len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise ValueError("bad problem line")
                n = int(parts[2])
            elif parts[0] == "e":
                if n is None or len(parts) != 3:
                    raise ValueError("edge before problem line or wrong arity")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if u == v:
                    raise ValueError("self-loop")
                edges.append((u, v))
            else:
                raise ValueError(f"unknown line type {parts[0]!r}")
        except ValueError as exc:
            raise InvalidInput(f"DIMACS line {lineno}: {exc}") from None
    if n is None:
        raise InvalidInput("DIMACS input has no problem line")
    return Graph.from_edges(n, edges)


# -- lists ------------------------------------------------------------------------

def lists_to_json(l: ListAssignment, classes: ColourClasses | None = None) -> dict:
    out: dict[str, Any] = {"lists": [sorted(x) for x in l.lists]}
    if classes is not None:
        out["classes"] = [sorted(c) for c in classes]
    return out


def lists_from_json(d: dict) -> tuple[ListAssignment, ColourClasses | None]:
    raw = _need(d, "lists", "list assignment")
    try:
        lists = ListAssignment.of([int(c) for c in x] for x in raw)
        classes = d.get("classes")
        cls = ColourClasses.of([int(c) for c in x] for x in classes) if classes is not None else None
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"lists must be arrays of integer colours: {exc}") from None
    return lists, cls


# -- witnesses ---------------------------------------------------------------------

def witness_to_json(w: Witness) -> dict:
    out = {
        "graph": graph_to_json(w.graph),
        "lambda": format_lambda(w.lam),
        "classes": [sorted(c) for c in w.classes],
        "lists": [sorted(x) for x in w.lists.lists],
        "t": w.t,
        "provenance": w.provenance,
        "verification": dict(w.verification),
    }
    if w.gadget is not None:
        out["gadget"] = w.gadget
    if w.compose is not None:
        out["compose"] = w.compose
    return out


def witness_from_json(d: dict) -> Witness:
    graph = graph_from_json(_need(d, "graph", "witness"))
    lists, _ = lists_from_json(d)
    classes = ColourClasses.of(_need(d, "classes", "witness"))
    t = _need(d, "t", "witness")
    return Witness(graph, parse_lambda(_need(d, "lambda", "witness")), classes, lists, int(t),
                   provenance=d.get("provenance", ""), verification=dict(d.get("verification", {})),
                   gadget=d.get("gadget"), compose=d.get("compose"))


# -- Steiner graphs -------------------------------------------------------------------

def steiner_to_json(h: SteinerGraph) -> dict:
    return {"graph": graph_to_json(h.graph), "A": list(h.A), "B": list(h.B), "n": h.n,
            "eps": str(h.eps), "verified_minor_free_up_to": h.verified_minor_free_up_to}


def steiner_from_json(d: dict) -> SteinerGraph:
    try:
        eps = Fraction(str(_need(d, "eps", "Steiner graph")))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad eps: {exc}") from None
    return SteinerGraph(graph_from_json(_need(d, "graph", "Steiner graph")),
                        tuple(_need(d, "A", "Steiner graph")), tuple(_need(d, "B", "Steiner graph")),
                        int(_need(d, "n", "Steiner graph")), eps,
                        d.get("verified_minor_free_up_to"))


# -- files ---------------------------------------------------------------------------------

def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InvalidInput(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from None


def dump_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=1, sort_keys=False) + "\n")


def load_graph(path) -> Graph:
    """Graph JSON, a witness/Steiner bundle holding a graph, or a DIMACS file."""
    p = Path(path)
    if p.suffix in (".col", ".dimacs"):
        try:
            return read_dimacs(p.read_text())
        except FileNotFoundError:
            raise InvalidInput(f"no such file: {path}") from None
    d = load_json(p)
    return graph_from_json(d["graph"] if isinstance(d, dict) and "graph" in d else d)
