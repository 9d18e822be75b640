"""Explanation graphs of an atom and an independent validity check for them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ._walk import (DEFAULT_SELECTION_CAP, cycle_identification, get_connection,
                    has_positive_cycle, is_negative, iter_selections,
                    strongly_connected_components)
from .errors import IntegrityError
from .program import GroundProgram, Lit
from .support import Marker, SupportTable, node_key

__all__ = [
    "Label",
    "ExplanationGraph",
    "ValidationReport",
    "edge_label",
    "get_connection",
    "explanation_graphs",
    "validate_explanation_graph",
]


class Label(enum.Enum):
    POS = "+"
    NEG = "-"
    ASSUME = "o"

    def __repr__(self):
        return f"Label.{self.name}"


def edge_label(src, dst) -> Label:
    """Label forced by the polarities of an edge's endpoints."""
    if dst is Marker.ASSUME:
        return Label.ASSUME
    if isinstance(dst, Marker):
        return Label.POS
    if src.positive:
        return Label.POS if dst.positive else Label.NEG
    return Label.NEG if dst.positive else Label.POS


@dataclass(frozen=True)
class ExplanationGraph:
    root: Lit
    nodes: frozenset
    edges: frozenset  # of (src, dst, Label)

    def successors(self, node) -> list:
        return sorted((e for e in self.edges if e[0] == node), key=lambda e: node_key(e[1]))

    def has_edge(self, src, dst, label: Optional[Label] = None) -> bool:
        if label is not None:
            return (src, dst, label) in self.edges
        return any(e[0] == src and e[1] == dst for e in self.edges)

    def sorted_nodes(self) -> list:
        return sorted(self.nodes, key=node_key)

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (node_key(e[0]), node_key(e[1]), e[2].value))


def _get_graph(k, nodes: set, edges: set, selection, visited: set, stack: list,
               active: dict) -> bool:
    children = selection[k].children() if k in selection else ()
    visited.add(k)
    stack.append(k)
    for i in children:
        nodes.add(i)
        edges.add((k, i, edge_label(k, i)))
        active[k] = i
        if i not in visited:
            if not _get_graph(i, nodes, edges, selection, visited, stack, active):
                return False
        elif i in stack:
            if not (is_negative(i) and cycle_identification(active, i, i)):
                return False
    stack.pop()
    active.pop(k, None)
    return True


def _build(root, selection) -> Optional[ExplanationGraph]:
    nodes, edges = {root}, set()
    if not _get_graph(root, nodes, edges, selection, set(), [], {}):
        return None
    if has_positive_cycle((s, d) for s, d, _ in edges):
        return None
    return ExplanationGraph(root, frozenset(nodes), frozenset(edges))


def explanation_graphs(atom: int, table: SupportTable, assumed,
                       selection_cap: int = DEFAULT_SELECTION_CAP) -> list:
    """All explanation graphs of ``atom`` under the assumption set ``assumed``.

    Ordered by root support set, then by selection; duplicates are dropped.
    """
    program = table.program
    if atom not in program.herbrand:
        raise KeyError(f"atom id {atom} is not in the Herbrand base")
    assumed = frozenset(assumed)
    if assumed & table.answer_set:
        raise IntegrityError("assumed atoms must be false in the answer set")
    work = table.with_assumptions(assumed)
    root = work.key_for(atom)
    graphs, seen = [], set()
    for seed in work[root]:
        local = get_connection(seed, work, {root: (seed,)})
        for _, g in iter_selections(root, seed, local, lambda sel: _build(root, sel),
                                    selection_cap):
            if g is not None and g not in seen:
                seen.add(g)
                graphs.append(g)
    return graphs


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    reason: str = ""
    offender: object = None

    def __bool__(self):
        return self.valid


def _fail(reason, offender=None) -> ValidationReport:
    return ValidationReport(False, reason, offender)


def validate_explanation_graph(graph: ExplanationGraph, program: GroundProgram,
                               answer_set, assumed) -> ValidationReport:
    """Check ``graph`` against the conditions on explanation graphs, returning the first violation.

    Works from the program and answer set alone; no support table is consulted.
    """
    A = frozenset(answer_set)
    U = frozenset(assumed)
    root, nodes, edges = graph.root, graph.nodes, graph.edges

    if not isinstance(root, Lit) or root.atom not in program.herbrand:
        return _fail("root is not a literal of the program", root)
    if root.positive != (root.atom in A):
        return _fail("root polarity disagrees with the answer set", root)
    if root not in nodes:
        return _fail("root is not a node", root)
    for n in nodes:
        if isinstance(n, Marker):
            continue
        if not isinstance(n, Lit) or n.atom not in program.herbrand:
            return _fail("node outside the node alphabet", n)
        if n.positive != (n.atom in A):
            return _fail("literal node disagrees with the answer set", n)

    out: dict = {n: [] for n in nodes}
    for e in edges:
        src, dst, label = e
        if src not in nodes or dst not in nodes:
            return _fail("edge endpoint is not a node", e)
        if not isinstance(label, Label):
            return _fail("unknown edge label", e)
        if isinstance(src, Marker):
            return _fail("edge leaves a sink node", e)
        out[src].append((dst, label))

    seen = {root}
    todo = [root]
    while todo:
        for dst, _ in out[todo.pop()]:
            if dst not in seen:
                seen.add(dst)
                todo.append(dst)
    for n in sorted(nodes - seen, key=node_key):
        return _fail("node not reachable from the root", n)

    for n in sorted(nodes, key=node_key):
        if isinstance(n, Marker):
            continue
        report = (_check_positive if n.positive else _check_negative)(n, out[n], program, A, U)
        if report is not None:
            return report

    succ: dict = {}
    for src, dst, _ in edges:
        succ.setdefault(src, []).append(dst)
    for comp in strongly_connected_components(succ):
        cyclic = len(comp) > 1 or comp[0] in succ.get(comp[0], ())
        if cyclic:
            for n in sorted(comp, key=node_key):
                if isinstance(n, Lit) and n.positive:
                    return _fail("positive node lies on a cycle", n)
    return ValidationReport(True)


def _check_positive(x: Lit, succ, program, A, U):
    if not succ:
        return _fail("literal node without support", x)
    markers = [(d, l) for d, l in succ if isinstance(d, Marker)]
    if markers:
        if succ != [(Marker.TOP, Label.POS)]:
            return _fail("true atom has a malformed sink edge", x)
        if x.atom not in program.facts:
            return _fail("edge to T from an atom that is not a fact", x)
        return None
    for d, l in succ:
        if l is not (Label.POS if d.positive else Label.NEG):
            return _fail("wrong edge label out of a true atom", (x, d, l))
    xp = frozenset(d.atom for d, _ in succ if d.positive)
    xn = frozenset(d.atom for d, _ in succ if not d.positive)
    if not (xp <= A) or xn & A:
        return _fail("support of a true atom disagrees with the answer set", x)
    if not any(r.pos == xp and r.neg == xn for r in program.rules_for(x.atom)):
        return _fail("out-neighbours encode no rule for this atom", x)
    return None


def _check_negative(x: Lit, succ, program, A, U):
    if x.atom in U:
        if succ != [(Marker.ASSUME, Label.ASSUME)]:
            return _fail("assumed atom must point only to assume", x)
        return None
    if not succ:
        return _fail("literal node without support", x)
    if any(d is Marker.ASSUME for d, _ in succ):
        return _fail("assume edge for an atom outside the assumption set", x)
    if any(d is Marker.TOP for d, _ in succ):
        return _fail("edge to T from a false atom", x)
    if any(d is Marker.BOT for d, _ in succ):
        if succ != [(Marker.BOT, Label.POS)]:
            return _fail("false atom has a malformed sink edge", x)
        if program.has_rules(x.atom):
            return _fail("edge to F from an atom that has rules", x)
        return None
    for d, l in succ:
        if l is not (Label.NEG if d.positive else Label.POS):
            return _fail("wrong edge label out of a false atom", (x, d, l))
    xp = frozenset(d.atom for d, _ in succ if d.positive)
    xn = frozenset(d.atom for d, _ in succ if not d.positive)
    if not (xp <= A) or xn & A:
        return _fail("support of a false atom disagrees with the answer set", x)
    for r in program.rules_for(x.atom):
        if not (r.pos & xn or r.neg & xp):
            return _fail(f"rule {r.index} for this atom is not falsified", x)
    return None
