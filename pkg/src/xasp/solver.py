"""Answer sets of ground normal programs.

The search branches on the atoms that occur under negation: once their truth
values are fixed the reduct is fixed, so the candidate is the least model of
that reduct. Partial assignments are pruned with a lower bound (rules whose
negative body is already known false) and an upper bound (rules not yet
blocked), the same pair of fixpoints the well-founded operator alternates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import ResourceLimitError
from .program import GroundProgram, Rule

DEFAULT_BRANCHING_CAP = 30


@dataclass(frozen=True)
class CautiousConsequences:
    c_plus: frozenset
    c_minus: frozenset
    inconsistent: bool = False

    @property
    def combined(self) -> frozenset:
        return self.c_plus | self.c_minus


@dataclass(frozen=True)
class WellFoundedModel:
    wf_true: frozenset
    wf_false: frozenset
    unknown: frozenset

    @property
    def is_total(self) -> bool:
        return not self.unknown


def _fixpoint(rules: Iterable[Rule]) -> set:
    # Counter-based forward chaining; each rule fires once its positive body is derived.
    waiting: dict[int, list] = {}
    missing = []
    queue = []
    heads = []
    for r in rules:
        if r.head is None:
            continue
        k = len(heads)
        heads.append(r.head)
        missing.append(len(r.pos))
        if not r.pos:
            queue.append(k)
        for a in r.pos:
            waiting.setdefault(a, []).append(k)
    model: set = set()
    while queue:
        h = heads[queue.pop()]
        if h in model:
            continue
        model.add(h)
        for k in waiting.get(h, ()):
            missing[k] -= 1
            if missing[k] == 0:
                queue.append(k)
    return model


def reduct(program: GroundProgram, interpretation) -> GroundProgram:
    """Drop rules blocked by ``interpretation`` and strip the remaining ``not`` literals."""
    interpretation = frozenset(interpretation)
    kept = [Rule(r.head, r.pos, frozenset(), r.index)
            for r in program.rules if not (r.neg & interpretation)]
    return GroundProgram(program.names, kept)


def least_model(program: GroundProgram) -> frozenset:
    """The least model of a positive program (constraints are ignored)."""
    if program.nant:
        raise ValueError("least_model expects a program without default negation")
    return frozenset(_fixpoint(program.rules))


def consequence_steps(program: GroundProgram) -> Iterator[frozenset]:
    """Iterates of the one-step consequence operator from the empty set to its fixpoint."""
    if program.nant:
        raise ValueError("consequence_steps expects a program without default negation")
    current: frozenset = frozenset()
    yield current
    while True:
        nxt = frozenset(r.head for r in program.rules
                        if r.head is not None and r.pos <= current)
        if nxt == current:
            return
        current = nxt
        yield current


def _reduct_model(program: GroundProgram, interpretation) -> set:
    return _fixpoint(r for r in program.rules if not (r.neg & interpretation))


def satisfies_constraints(program: GroundProgram, interpretation) -> bool:
    return not any(c.body_satisfied(interpretation) for c in program.constraints)


def is_model(program: GroundProgram, interpretation) -> bool:
    """True iff every rule and constraint is satisfied."""
    return all(
        (r.head is not None and r.head in interpretation) or not r.body_satisfied(interpretation)
        for r in program.rules
    )


def is_answer_set(program: GroundProgram, interpretation) -> bool:
    interpretation = frozenset(interpretation)
    if not interpretation <= program.herbrand:
        raise ValueError("interpretation is not a subset of the Herbrand base")
    return (_reduct_model(program, interpretation) == interpretation
            and satisfies_constraints(program, interpretation))


def bitset_key(interpretation, size: int) -> tuple:
    """Lexicographic sort key over the atom-id indicator vector."""
    return tuple(a in interpretation for a in range(size))


def enumerate_answer_sets(program: GroundProgram, limit: Optional[int] = None,
                          branching_cap: int = DEFAULT_BRANCHING_CAP) -> list:
    """All answer sets in bitset order, truncated to ``limit`` if given."""
    branch_atoms = sorted(program.nant)
    if len(branch_atoms) > branching_cap:
        raise ResourceLimitError(
            f"{len(branch_atoms)} negated atoms exceed the branching cap of {branching_cap}")
    rules = [r for r in program.rules if r.head is not None]
    found = set()

    def propagate(assign: dict):
        while True:
            true = {a for a, v in assign.items() if v}
            false = {a for a, v in assign.items() if not v}
            lower = _fixpoint(r for r in rules if r.neg <= false)
            upper = _fixpoint(r for r in rules if not (r.neg & true))
            changed = False
            for a in branch_atoms:
                v = assign.get(a)
                if a in lower:
                    if v is False:
                        return None
                    if v is None:
                        assign[a] = changed = True
                elif a not in upper:
                    if v is True:
                        return None
                    if v is None:
                        assign[a] = False
                        changed = True
            for c in program.constraints:
                if c.pos <= lower and not (c.neg & upper):
                    return None
            if not changed:
                return lower, upper

    def search(assign: dict):
        bounds = propagate(assign)
        if bounds is None:
            return
        lower, upper = bounds
        for a in branch_atoms:
            if a not in assign:
                for value in (False, True):
                    search({**assign, a: value})
                return
        candidate = frozenset(lower)
        if lower == upper and is_answer_set(program, candidate):
            found.add(candidate)

    search({})
    ordered = sorted(found, key=lambda s: bitset_key(s, len(program.names)))
    return ordered if limit is None else ordered[:limit]


def cautious_consequences(program: GroundProgram,
                          answer_sets: Optional[list] = None,
                          branching_cap: int = DEFAULT_BRANCHING_CAP) -> CautiousConsequences:
    """Atoms true in every answer set (``c_plus``) and in none (``c_minus``).

    For a program without answer sets both sets are the whole Herbrand base and
    ``inconsistent`` is set.
    """
    if answer_sets is None:
        answer_sets = enumerate_answer_sets(program, branching_cap=branching_cap)
    if not answer_sets:
        return CautiousConsequences(program.herbrand, program.herbrand, inconsistent=True)
    c_plus = frozenset.intersection(*map(frozenset, answer_sets))
    c_minus = program.herbrand - frozenset.union(*map(frozenset, answer_sets))
    return CautiousConsequences(c_plus, c_minus)


def well_founded_model(program: GroundProgram) -> WellFoundedModel:
    """Alternating fixpoint: underestimate and overestimate of the true atoms."""
    upper = set(program.herbrand)
    while True:
        lower = _reduct_model(program, upper)
        new_upper = _reduct_model(program, lower)
        if new_upper == upper:
            break
        upper = new_upper
    wf_true = frozenset(lower)
    wf_false = program.herbrand - frozenset(upper)
    return WellFoundedModel(wf_true, wf_false, program.herbrand - wf_true - wf_false)
