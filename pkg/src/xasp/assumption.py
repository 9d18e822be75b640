"""Minimal assumption sets.

Tentative assumptions are negated atoms that are false in the answer set and
not cautiously decided. Each of them either has an acceptable derivation path
(possibly ending in other tentative atoms, which become dependencies) or must
be assumed outright. Cycles among the dependencies are then broken by a
minimum-cardinality choice of one atom per cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ._walk import (DEFAULT_SELECTION_CAP, cycle_identification, get_connection,
                    has_positive_cycle, is_negative, iter_selections)
from .errors import NotAnAnswerSetError, ResourceLimitError
from .program import GroundProgram, Lit, Rule
from .solver import (DEFAULT_BRANCHING_CAP, CautiousConsequences, cautious_consequences,
                     is_answer_set, well_founded_model)
from .support import SupportTable, build_support_table

__all__ = [
    "DerivationCheckState",
    "TentativeAssumptions",
    "AssumptionAnalysis",
    "AssumptionDiagnostic",
    "tentative_assumptions",
    "check_derivation_path",
    "cycle_identification",
    "derivation_paths",
    "elementary_cycles",
    "minimum_hitting_sets",
    "analyze_assumptions",
    "minimal_assumption_sets",
    "assumption_diagnostic",
]


@dataclass
class DerivationCheckState:
    visited: set = field(default_factory=set)
    stack: list = field(default_factory=list)
    active_edge: dict = field(default_factory=dict)
    deps: set = field(default_factory=set)
    edges: list = field(default_factory=list)


@dataclass(frozen=True)
class TentativeAssumptions:
    atoms: frozenset
    must_assume: frozenset
    dependencies: Mapping


@dataclass(frozen=True)
class AssumptionAnalysis:
    tentative: TentativeAssumptions
    cycles: tuple
    minimal_sets: tuple


@dataclass(frozen=True)
class AssumptionDiagnostic:
    wf_total: bool
    wf_true_matches: bool
    literal_condition: Optional[bool]


def tentative_assumptions(program: GroundProgram, answer_set,
                          cautious: CautiousConsequences) -> frozenset:
    return program.nant - frozenset(answer_set) - cautious.combined


def check_derivation_path(start, selection: Mapping, others,
                          state: Optional[DerivationCheckState] = None):
    """Depth-first check of the derivation path induced by ``selection`` from ``start``.

    Negative literals of atoms in ``others`` are recorded as dependencies and
    not expanded. Returns ``(safe, deps)``; a path is unsafe when a cycle
    through a positive literal is closed.
    """
    if state is None:
        state = DerivationCheckState()
    safe = _check(start, selection, others, state)
    if safe and has_positive_cycle(state.edges):
        safe = False
    return safe, state.deps


def _check(k, selection, others, st: DerivationCheckState) -> bool:
    children = selection[k].children() if k in selection else ()
    st.visited.add(k)
    st.stack.append(k)
    for i in children:
        st.active_edge[k] = i
        if is_negative(i) and i.atom in others:
            st.deps.add(i.atom)
            continue
        st.edges.append((k, i))
        if i not in st.visited:
            if not _check(i, selection, others, st):
                return False
        elif i in st.stack:
            if not (is_negative(i) and cycle_identification(st.active_edge, i, i)):
                return False
    st.stack.pop()
    st.active_edge.pop(k, None)
    return True


def derivation_paths(tentative, table: SupportTable,
                     selection_cap: int = DEFAULT_SELECTION_CAP):
    """Split tentative atoms into those that must be assumed and those with a safe path.

    Returns ``(must_assume, deps)`` where ``deps`` maps every admitted atom to the
    tentative atoms its first safe path stopped at.
    """
    tentative = frozenset(tentative)
    deps: dict = {}
    for a in sorted(tentative):
        others = tentative - {a}
        root = Lit(a, False)
        for seed in table[root]:
            local = get_connection(seed, table, {root: (seed,)})
            run = lambda sel: check_derivation_path(root, sel, others)  # noqa: E731
            for _, (safe, found) in iter_selections(root, seed, local, run, selection_cap):
                if safe:
                    deps[a] = frozenset(found)
                    break
            if a in deps:
                break
    return tentative - frozenset(deps), deps


def elementary_cycles(graph: Mapping) -> list:
    """All elementary cycles of a digraph given as ``node -> successors`` (Johnson's algorithm).

    Each cycle is a tuple starting at its smallest node.
    """
    nodes = sorted(set(graph) | {w for ws in graph.values() for w in ws})
    cycles = []
    for i, s in enumerate(nodes):
        allowed = set(nodes[i:])
        sub = {v: [w for w in sorted(graph.get(v, ())) if w in allowed] for v in allowed}
        # restrict to the strongly connected part containing s
        comp = _component_of(s, sub)
        if len(comp) == 1 and s not in sub[s]:
            continue
        blocked = set()
        block_map: dict = {v: set() for v in comp}
        path = [s]

        def unblock(v):
            todo = [v]
            while todo:
                x = todo.pop()
                if x in blocked:
                    blocked.discard(x)
                    todo.extend(block_map[x])
                    block_map[x].clear()

        def circuit(v) -> bool:
            found = False
            blocked.add(v)
            for w in sub[v]:
                if w not in comp:
                    continue
                if w == s:
                    cycles.append(tuple(path))
                    found = True
                elif w not in blocked:
                    path.append(w)
                    if circuit(w):
                        found = True
                    path.pop()
            if found:
                unblock(v)
            else:
                for w in sub[v]:
                    if w in comp:
                        block_map[w].add(v)
            return found

        circuit(s)
    return cycles


def _component_of(s, succ: Mapping) -> set:
    forward = _reach(s, succ)
    pred: dict = {}
    for v, ws in succ.items():
        for w in ws:
            pred.setdefault(w, []).append(v)
    return forward & _reach(s, pred)


def _reach(s, succ: Mapping) -> set:
    seen = {s}
    todo = [s]
    while todo:
        for w in succ.get(todo.pop(), ()):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def minimum_hitting_sets(family) -> list:
    """All minimum-cardinality sets meeting every member of ``family``."""
    family = [frozenset(f) for f in family]
    if not family:
        return [frozenset()]
    universe = sorted(frozenset().union(*family))
    for k in range(1, len(universe) + 1):
        hits = [frozenset(c) for c in itertools.combinations(universe, k)
                if all(f.intersection(c) for f in family)]
        if hits:
            return hits
    return []


def _sort_sets(sets) -> list:
    return sorted(set(sets), key=lambda s: (len(s), sorted(s)))


BASES = ("cautious", "well-founded")


def analyze_assumptions(program: GroundProgram, answer_set,
                        cautious: Optional[CautiousConsequences] = None,
                        table: Optional[SupportTable] = None, *,
                        basis: str = "cautious",
                        selection_cap: int = DEFAULT_SELECTION_CAP,
                        branching_cap: int = DEFAULT_BRANCHING_CAP) -> AssumptionAnalysis:
    """Tentative assumptions, their dependencies, and all minimal assumption sets.

    ``basis`` selects which atoms count as already decided: ``"cautious"``
    removes cautious consequences from the tentative set, ``"well-founded"``
    removes atoms decided by the well-founded model. The latter keeps atoms
    that are in no answer set but still undefined, which may be needed to
    break cycles through true atoms.
    """
    answer_set = frozenset(answer_set)
    if basis not in BASES:
        raise ValueError(f"basis must be one of {BASES}")
    if not is_answer_set(program, answer_set):
        raise NotAnAnswerSetError("assumption sets are only defined for answer sets")
    if table is None:
        table = build_support_table(program, answer_set)
    if basis == "cautious":
        if cautious is None:
            cautious = cautious_consequences(program, branching_cap=branching_cap)
        ta = tentative_assumptions(program, answer_set, cautious)
    else:
        wf = well_founded_model(program)
        ta = program.nant - answer_set - wf.wf_true - wf.wf_false
    must, deps = derivation_paths(ta, table, selection_cap)
    dep_graph = {a: {j for j in ds if j in deps} for a, ds in deps.items()}
    cycles = tuple(elementary_cycles(dep_graph))
    if cycles:
        minimal = [m | must for m in minimum_hitting_sets(cycles)]
    else:
        minimal = [must]
    return AssumptionAnalysis(TentativeAssumptions(ta, must, deps), cycles,
                              tuple(_sort_sets(minimal)))


def minimal_assumption_sets(program: GroundProgram, answer_set,
                            cautious: Optional[CautiousConsequences] = None,
                            table: Optional[SupportTable] = None, **caps) -> list:
    """All minimal assumption sets for ``answer_set``, sorted by size then atom ids."""
    return list(analyze_assumptions(program, answer_set, cautious, table, **caps).minimal_sets)


def assumption_diagnostic(program: GroundProgram, answer_set, assumed,
                          branching_cap: int = DEFAULT_BRANCHING_CAP) -> AssumptionDiagnostic:
    """Check an assumption set against the program with the assumed atoms' rules removed.

    Reports whether that program's well-founded model is total with true part
    equal to ``answer_set``, and whether ``answer_set`` equals its cautious
    consequences read literally (``None`` when the latter exceeds the branching cap).
    """
    answer_set = frozenset(answer_set)
    assumed = frozenset(assumed)
    kept = [Rule(r.head, r.pos, r.neg, r.index) for r in program.rules
            if r.head is None or r.head not in assumed]
    reduced = GroundProgram(program.names, kept)
    wf = well_founded_model(reduced)
    try:
        literal = cautious_consequences(reduced, branching_cap=branching_cap).combined == answer_set
    except ResourceLimitError:
        literal = None
    return AssumptionDiagnostic(wf.is_total, wf.wf_true == answer_set, literal)
