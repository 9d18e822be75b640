"""Explanation graphs for answer set programs.

Given a ground normal program, one of its answer sets and an atom, compute the
atom's supported sets, the minimal assumption sets, and every explanation
graph justifying why the atom is true or false.
"""

from .assumption import (AssumptionAnalysis, analyze_assumptions, assumption_diagnostic,
                         check_derivation_path, cycle_identification, derivation_paths,
                         minimal_assumption_sets, tentative_assumptions)
from .errors import (AspifError, IntegrityError, NonGroundError, NotAnAnswerSetError,
                     ParseError, ResourceLimitError, XaspError)
from .explanation import (ExplanationGraph, Label, explanation_graphs, get_connection,
                          validate_explanation_graph)
from .pipeline import Explainer
from .program import (GroundProgram, Lit, Rule, emit_aspif, externalize_facts, nant,
                      parse_aspif, parse_program, render_program)
from .serialize import GraphDocument, emit_dot
from .solver import (CautiousConsequences, WellFoundedModel, cautious_consequences,
                     enumerate_answer_sets, is_answer_set, least_model, reduct,
                     well_founded_model)
from .support import (Marker, SupportSet, SupportTable, build_support_table,
                      support_false_choices, support_true)

__version__ = "0.1.0"

__all__ = [
    "AspifError", "AssumptionAnalysis", "CautiousConsequences", "Explainer",
    "ExplanationGraph", "GraphDocument", "GroundProgram", "IntegrityError", "Label", "Lit",
    "Marker", "NonGroundError", "NotAnAnswerSetError", "ParseError", "ResourceLimitError",
    "Rule", "SupportSet", "SupportTable", "WellFoundedModel", "XaspError",
    "analyze_assumptions", "assumption_diagnostic", "build_support_table",
    "cautious_consequences", "check_derivation_path", "cycle_identification",
    "derivation_paths", "emit_aspif", "emit_dot", "enumerate_answer_sets",
    "explanation_graphs", "externalize_facts", "get_connection", "is_answer_set",
    "least_model", "minimal_assumption_sets", "nant", "parse_aspif", "parse_program",
    "reduct", "render_program", "support_false_choices", "support_true",
    "tentative_assumptions", "validate_explanation_graph", "well_founded_model",
]
