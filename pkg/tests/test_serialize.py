from hypothesis import given, settings

from oracles import programs
from xasp import Explainer, GraphDocument, build_support_table, emit_dot, enumerate_answer_sets
from xasp.explanation import ExplanationGraph
from xasp.serialize import format_atoms, format_graph_text, program_digest


def test_single_root_document(p1):
    root = p1.parse_lit("f")
    g = ExplanationGraph(root, frozenset({root}), frozenset())
    doc = GraphDocument.from_graph(g, p1, p1.interpretation("bef"), set())
    dot = emit_dot(doc, "g")
    assert dot == 'digraph "g" {\n  n0 [label="f", shape=ellipse];\n}\n'


def test_quoting(p1):
    doc = GraphDocument("d", (), (), 'a"b', ((0, "pos", 'a"b\\'),), ())
    assert '[label="a\\"b\\\\", shape=ellipse]' in emit_dot(doc, "x")


def test_document_fields(p1):
    A = p1.interpretation("bef")
    (g,) = Explainer(p1, A).explain("f", p1.interpretation("a"))
    doc = GraphDocument.from_graph(g, p1, A, p1.interpretation("a"))
    assert doc.root == "f"
    assert doc.nodes[0] == (0, "pos", "f")
    assert doc.program_digest == program_digest(p1)
    kinds = {k for _, k, _ in doc.nodes}
    assert kinds == {"pos", "neg", "top", "assume"}
    assert doc.to_graph(p1) == g
    assert format_graph_text(doc).startswith("explanation of f under U = {a}\n")


def test_format_atoms_lexicographic(p1):
    assert format_atoms(p1, p1.interpretation("kace")) == "{a,c,e,k}"


@settings(max_examples=100, deadline=None)
@given(programs(max_atoms=5, max_rules=7))
def test_round_trip(p):
    for A in enumerate_answer_sets(p):
        ex = Explainer(p, A)
        t = build_support_table(p, A)
        assert ex.table.items() == t.items()
        for u in ex.assumption_sets:
            for x in p.herbrand:
                for g in ex.explain(x, u):
                    doc = GraphDocument.from_graph(g, p, A, u)
                    assert GraphDocument.from_json(doc.to_json()) == doc
                    assert doc.to_graph(p) == g
                    assert emit_dot(doc) == emit_dot(GraphDocument.from_json(doc.to_json()))
