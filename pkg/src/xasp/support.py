"""Supported sets of every signed literal with respect to an answer set."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InternalInvariantError, NotAnAnswerSetError
from .program import GroundProgram, Lit, Rule
from .solver import is_answer_set


class Marker(enum.Enum):
    TOP = "T"
    BOT = "F"
    ASSUME = "assume"

    def __repr__(self):
        return f"Marker.{self.name}"


_MARKER_ORDER = {Marker.TOP: 0, Marker.BOT: 1, Marker.ASSUME: 2}


def node_key(node) -> tuple:
    """Total order over literals and markers: literals by (atom, polarity), markers last."""
    if isinstance(node, Marker):
        return (1, _MARKER_ORDER[node], False)
    return (0, node.atom, node.positive)


@dataclass(frozen=True)
class SupportSet:
    literals: frozenset = frozenset()
    marker: Optional[Marker] = None

    def __post_init__(self):
        if (self.marker is None) == (not self.literals):
            raise ValueError("a support set holds either literals or a single marker")
        if len({l.atom for l in self.literals}) != len(self.literals):
            raise ValueError("support set mentions an atom with both polarities")

    @classmethod
    def of(cls, *lits: Lit) -> "SupportSet":
        return cls(frozenset(lits))

    def children(self) -> tuple:
        """Successor nodes in deterministic order."""
        if self.marker is not None:
            return (self.marker,)
        return tuple(sorted(self.literals))

    def sort_key(self) -> tuple:
        return tuple(node_key(n) for n in self.children())

    @property
    def positive(self) -> frozenset:
        return frozenset(l.atom for l in self.literals if l.positive)

    @property
    def negative(self) -> frozenset:
        return frozenset(l.atom for l in self.literals if not l.positive)


FACT_TOP = SupportSet(marker=Marker.TOP)
NO_RULE_BOT = SupportSet(marker=Marker.BOT)
ASSUME = SupportSet(marker=Marker.ASSUME)


class SupportTable:
    """Read-only map from signed literal to its ordered list of support sets."""

    def __init__(self, program: GroundProgram, answer_set, entries: dict):
        self.program = program
        self.answer_set = frozenset(answer_set)
        self._entries = {k: tuple(v) for k, v in entries.items()}

    def __getitem__(self, key: Lit) -> tuple:
        return self._entries[key]

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[Lit]:
        return iter(sorted(self._entries))

    def __len__(self):
        return len(self._entries)

    def items(self):
        return [(k, self._entries[k]) for k in self]

    def key_for(self, atom: int) -> Lit:
        return Lit(atom, atom in self.answer_set)

    def with_assumptions(self, assumed) -> "SupportTable":
        """Copy in which every ``~u`` for ``u`` in ``assumed`` is supported only by ``assume``."""
        entries = dict(self._entries)
        for u in assumed:
            key = Lit(u, False)
            if key not in entries:
                raise KeyError(u)
            entries[key] = (ASSUME,)
        return SupportTable(self.program, self.answer_set, entries)

    def to_text(self) -> str:
        return format_support_table(self)


def support_true(atom: int, rule: Rule, answer_set, facts) -> Optional[SupportSet]:
    """Supported set of a true atom for one rule, or None if the body is not satisfied."""
    if not (rule.pos <= answer_set and not (rule.neg & answer_set)):
        return None
    if atom in facts and rule.is_fact:
        return FACT_TOP
    return SupportSet(frozenset(Lit(p, True) for p in rule.pos)
                      | frozenset(Lit(n, False) for n in rule.neg))


def support_false_choices(atom: int, rule: Rule, answer_set) -> list:
    """One single-literal supported set per literal falsifying ``rule``'s body."""
    choices = [SupportSet.of(Lit(n, True)) for n in sorted(rule.neg & answer_set)]
    choices += [SupportSet.of(Lit(p, False)) for p in sorted(rule.pos - answer_set)]
    if not choices:
        raise InternalInvariantError(
            f"rule {rule.index} for false atom {atom} has a satisfied body")
    return sorted(choices, key=SupportSet.sort_key)


def _dedupe(sets) -> list:
    seen = set()
    out = []
    for s in sets:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def build_support_table(program: GroundProgram, answer_set) -> SupportTable:
    answer_set = frozenset(answer_set)
    if not is_answer_set(program, answer_set):
        raise NotAnAnswerSetError("support tables are only defined for answer sets")
    entries = {}
    for a in sorted(program.herbrand):
        rules = program.rules_for(a)
        if a in answer_set:
            supports = (support_true(a, r, answer_set, program.facts) for r in rules)
            entries[Lit(a, True)] = _dedupe(s for s in supports if s is not None)
        elif not rules:
            entries[Lit(a, False)] = [NO_RULE_BOT]
        else:
            per_rule = [support_false_choices(a, r, answer_set) for r in rules]
            combined = (SupportSet(frozenset().union(*(s.literals for s in combo)))
                        for combo in itertools.product(*per_rule))
            entries[Lit(a, False)] = sorted(_dedupe(combined), key=SupportSet.sort_key)
    return SupportTable(program, answer_set, entries)


def format_support_set(program: GroundProgram, s: SupportSet) -> str:
    if s.marker is not None:
        return "{" + s.marker.value + "}"
    return "{" + ", ".join(program.lit_str(l) for l in s.children()) + "}"


def format_support_table(table: SupportTable) -> str:
    """One ``key : [set, set, ...]`` line per entry, keys in atom order."""
    lines = []
    for key, supports in table.items():
        body = ", ".join(format_support_set(table.program, s) for s in supports)
        lines.append(f"{table.program.lit_str(key)} : [{body}]")
    return "\n".join(lines) + ("\n" if lines else "")
