"""Serialized forms of explanation graphs: documents, DOT, JSON and plain text."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .explanation import ExplanationGraph, Label
from .program import GroundProgram, render_program
from .support import Marker

_MARKER_KIND = {Marker.TOP: "top", Marker.BOT: "bot", Marker.ASSUME: "assume"}
_KIND_MARKER = {v: k for k, v in _MARKER_KIND.items()}
_MARKER_NAME = {Marker.TOP: "⊤", Marker.BOT: "⊥", Marker.ASSUME: "assume"}


def program_digest(program: GroundProgram) -> str:
    return hashlib.sha256(render_program(program).encode()).hexdigest()


@dataclass(frozen=True)
class GraphDocument:
    program_digest: str
    answer_set: tuple
    assumption_set: tuple
    root: str
    nodes: tuple  # (id, kind, name)
    edges: tuple  # (from, to, label)

    @classmethod
    def from_graph(cls, graph: ExplanationGraph, program: GroundProgram, answer_set,
                   assumed, digest: str = None) -> "GraphDocument":
        ordered = [graph.root] + [n for n in graph.sorted_nodes() if n != graph.root]
        ids = {n: i for i, n in enumerate(ordered)}
        nodes = []
        for n in ordered:
            if isinstance(n, Marker):
                nodes.append((ids[n], _MARKER_KIND[n], _MARKER_NAME[n]))
            else:
                nodes.append((ids[n], "pos" if n.positive else "neg", program.lit_str(n)))
        edges = sorted((ids[s], ids[d], l.value) for s, d, l in graph.edges)
        return cls(
            program_digest=digest or program_digest(program),
            answer_set=tuple(program.sorted_names(answer_set)),
            assumption_set=tuple(program.sorted_names(assumed)),
            root=program.lit_str(graph.root),
            nodes=tuple(nodes),
            edges=tuple(edges),
        )

    def to_graph(self, program: GroundProgram) -> ExplanationGraph:
        by_id = {}
        for i, kind, name in self.nodes:
            by_id[i] = _KIND_MARKER[kind] if kind in _KIND_MARKER else program.parse_lit(name)
        edges = frozenset((by_id[s], by_id[d], Label(l)) for s, d, l in self.edges)
        return ExplanationGraph(program.parse_lit(self.root), frozenset(by_id.values()), edges)

    def to_dict(self) -> dict:
        return {
            "program_digest": self.program_digest,
            "answer_set": list(self.answer_set),
            "assumption_set": list(self.assumption_set),
            "root": self.root,
            "nodes": [{"id": i, "kind": k, "name": n} for i, k, n in self.nodes],
            "edges": [{"from": s, "to": d, "label": l} for s, d, l in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GraphDocument":
        return cls(
            program_digest=data["program_digest"],
            answer_set=tuple(data["answer_set"]),
            assumption_set=tuple(data["assumption_set"]),
            root=data["root"],
            nodes=tuple((n["id"], n["kind"], n["name"]) for n in data["nodes"]),
            edges=tuple((e["from"], e["to"], e["label"]) for e in data["edges"]),
        )

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "GraphDocument":
        return cls.from_dict(json.loads(text))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(doc: GraphDocument, name: str = "explanation") -> str:
    lines = [f"digraph {_dot_quote(name)} {{"]
    for i, kind, label in sorted(doc.nodes):
        shape = "box" if kind in _KIND_MARKER else "ellipse"
        lines.append(f"  n{i} [label={_dot_quote(label)}, shape={shape}];")
    for s, d, l in sorted(doc.edges):
        lines.append(f"  n{s} -> n{d} [label={_dot_quote(l)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_graph_text(doc: GraphDocument) -> str:
    names = {i: n for i, _, n in doc.nodes}
    u = "{" + ",".join(doc.assumption_set) + "}"
    lines = [f"explanation of {doc.root} under U = {u}"]
    for s, d, l in sorted(doc.edges):
        lines.append(f"  {names[s]} -> {names[d]} ({l})")
    return "\n".join(lines) + "\n"


def format_atoms(program: GroundProgram, atoms) -> str:
    """``{a,b,c}`` with names in lexicographic order."""
    return "{" + ",".join(sorted(program.names[a] for a in atoms)) + "}"


def lit_node_name(program: GroundProgram, node) -> str:
    if isinstance(node, Marker):
        return _MARKER_NAME[node]
    return program.lit_str(node)


__all__ = [
    "GraphDocument",
    "program_digest",
    "emit_dot",
    "format_graph_text",
    "format_atoms",
    "lit_node_name",
]
