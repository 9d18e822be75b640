"""End-to-end explanation of atoms for a fixed program and answer set."""

from __future__ import annotations

from functools import cached_property
from typing import Optional

from ._walk import DEFAULT_SELECTION_CAP
from .assumption import AssumptionAnalysis, analyze_assumptions
from .errors import NotAnAnswerSetError
from .explanation import explanation_graphs
from .program import GroundProgram
from .solver import (DEFAULT_BRANCHING_CAP, CautiousConsequences, cautious_consequences,
                     is_answer_set)
from .support import SupportTable, build_support_table


class Explainer:
    """Caches the support table and assumption analysis for one answer set.

    >>> from xasp import parse_program
    >>> p = parse_program("a :- not b. b :- not a.")
    >>> ex = Explainer(p, p.interpretation(["a"]))
    >>> [sorted(p.names[x] for x in u) for u in ex.assumption_sets]
    [['b']]
    """

    def __init__(self, program: GroundProgram, answer_set, *,
                 cautious: Optional[CautiousConsequences] = None,
                 basis: str = "cautious",
                 branching_cap: int = DEFAULT_BRANCHING_CAP,
                 selection_cap: int = DEFAULT_SELECTION_CAP):
        self.program = program
        self.answer_set = frozenset(answer_set)
        if not is_answer_set(program, self.answer_set):
            raise NotAnAnswerSetError(
                "{" + ",".join(program.sorted_names(self.answer_set)) + "} is not an answer set")
        self.basis = basis
        self.branching_cap = branching_cap
        self.selection_cap = selection_cap
        self._cautious = cautious

    @cached_property
    def cautious(self) -> CautiousConsequences:
        if self._cautious is not None:
            return self._cautious
        return cautious_consequences(self.program, branching_cap=self.branching_cap)

    @cached_property
    def table(self) -> SupportTable:
        return build_support_table(self.program, self.answer_set)

    @cached_property
    def analysis(self) -> AssumptionAnalysis:
        cautious = self.cautious if self.basis == "cautious" else None
        return analyze_assumptions(self.program, self.answer_set, cautious, self.table,
                                   basis=self.basis, selection_cap=self.selection_cap)

    @property
    def assumption_sets(self) -> tuple:
        return self.analysis.minimal_sets

    def explain(self, atom, assumed=None) -> list:
        """Explanation graphs of ``atom`` (name or id) under ``assumed``.

        ``assumed`` defaults to the first minimal assumption set.
        """
        if isinstance(atom, str):
            atom = self.program.atom(atom)
        if assumed is None:
            assumed = self.assumption_sets[0]
        return explanation_graphs(atom, self.table, assumed, self.selection_cap)
