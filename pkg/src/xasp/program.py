"""Ground normal logic programs: data model, native text syntax, and aspif I/O.

Atoms are interned into a dense table; ids are assigned in order of first
occurrence and every set-valued result iterates in ascending id order.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import AspifError, AspifWarning, NonGroundError, ParseError

__all__ = [
    "Lit",
    "Rule",
    "GroundProgram",
    "ProgramBuilder",
    "parse_program",
    "render_program",
    "parse_aspif",
    "emit_aspif",
    "externalize_facts",
    "nant",
]


class Lit(NamedTuple):
    """A signed literal: ``a`` when ``positive`` else ``~a``."""

    atom: int
    positive: bool

    def negate(self) -> "Lit":
        return Lit(self.atom, not self.positive)


@dataclass(frozen=True)
class Rule:
    head: Optional[int]
    pos: frozenset
    neg: frozenset
    index: int = 0

    @property
    def is_fact(self) -> bool:
        return self.head is not None and not self.pos and not self.neg

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    def body_satisfied(self, interpretation) -> bool:
        return self.pos <= interpretation and not (self.neg & interpretation)


class GroundProgram:
    """An immutable ground normal program over an interned atom table."""

    def __init__(self, names: Sequence[str], rules: Iterable[Rule]):
        self.names = tuple(names)
        self.ids = {name: i for i, name in enumerate(self.names)}
        if len(self.ids) != len(self.names):
            raise ValueError("atom names must be unique")
        self.rules = tuple(rules)
        n = len(self.names)
        by_head: dict[int, list[Rule]] = {}
        for r in self.rules:
            for a in r.pos | r.neg | ({r.head} if r.head is not None else set()):
                if not 0 <= a < n:
                    raise ValueError(f"rule {r.index} references unknown atom id {a}")
            if r.head is not None:
                by_head.setdefault(r.head, []).append(r)
        self._by_head = {h: tuple(rs) for h, rs in by_head.items()}
        self.herbrand = frozenset(range(n))
        self.facts = frozenset(r.head for r in self.rules if r.is_fact)
        self.nant = frozenset(a for r in self.rules for a in r.neg)
        self.constraints = tuple(r for r in self.rules if r.is_constraint)

    def __repr__(self):
        return f"GroundProgram({len(self.names)} atoms, {len(self.rules)} rules)"

    def __len__(self):
        return len(self.rules)

    def rules_for(self, atom: int) -> tuple:
        """Rules whose head is ``atom``, in source order."""
        return self._by_head.get(atom, ())

    def has_rules(self, atom: int) -> bool:
        return atom in self._by_head

    def atom(self, name: str) -> int:
        try:
            return self.ids[name]
        except KeyError:
            raise KeyError(f"unknown atom {name!r}") from None

    def interpretation(self, names: Iterable[str]) -> frozenset:
        """Map atom names to a set of ids."""
        return frozenset(self.atom(n) for n in names)

    def sorted_names(self, atoms: Iterable[int]) -> list:
        return [self.names[a] for a in sorted(atoms)]

    def lit_str(self, lit: Lit) -> str:
        name = self.names[lit.atom]
        return name if lit.positive else "~" + name

    def parse_lit(self, text: str) -> Lit:
        if text.startswith("~"):
            return Lit(self.atom(text[1:]), False)
        return Lit(self.atom(text), True)

    def rule_signature(self, rule: Rule) -> tuple:
        """Name-based view of a rule, independent of atom numbering."""
        head = None if rule.head is None else self.names[rule.head]
        return (head, frozenset(self.names[a] for a in rule.pos),
                frozenset(self.names[a] for a in rule.neg))


class ProgramBuilder:
    """Incrementally interns atoms and collects rules."""

    def __init__(self):
        self.names: list[str] = []
        self.ids: dict[str, int] = {}
        self.rules: list[Rule] = []

    def intern(self, name: str) -> int:
        i = self.ids.get(name)
        if i is None:
            _check_atom_name(name)
            i = self.ids[name] = len(self.names)
            self.names.append(name)
        return i

    def add(self, head: Optional[int], pos=(), neg=()) -> Rule:
        rule = Rule(head, frozenset(pos), frozenset(neg), len(self.rules))
        self.rules.append(rule)
        return rule

    def add_named(self, head: Optional[str], pos=(), neg=()) -> Rule:
        h = None if head is None else self.intern(head)
        return self.add(h, [self.intern(p) for p in pos], [self.intern(n) for n in neg])

    def build(self) -> GroundProgram:
        return GroundProgram(self.names, self.rules)


def _check_atom_name(name: str):
    if not name or name.startswith("~") or any(c.isspace() for c in name):
        raise ValueError(f"invalid atom name {name!r}")


def nant(program: GroundProgram) -> frozenset:
    """Atoms occurring under default negation in some rule body."""
    return program.nant


# --- native text syntax -----------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<external>\#external\b)
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z_][A-Za-z0-9_']*)
  | (?P<number>-?[0-9]+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[(),.])
    """,
    re.VERBOSE,
)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind == "punct":
            kind = value
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, value, line, pos - line_start + 1))
        nl = value.count("\n")
        if nl:
            line += nl
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.builder = ProgramBuilder()

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def expect(self, kind: str) -> _Tok:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.i += 1
        return tok

    def program(self) -> GroundProgram:
        while self.tok.kind != "eof":
            self.statement()
        return self.builder.build()

    def statement(self):
        b = self.builder
        if self.tok.kind == "external":
            self.i += 1
            head = self.atom()
            self.expect(".")
            b.add(b.intern(head))
            return
        head = None
        if self.tok.kind != "if":
            head = b.intern(self.atom())
        pos, neg = [], []
        if self.tok.kind == "if":
            self.i += 1
            if self.tok.kind != ".":
                while True:
                    negated, name = self.literal()
                    (neg if negated else pos).append(b.intern(name))
                    if self.tok.kind != ",":
                        break
                    self.i += 1
        elif head is None:
            raise self.error("expected an atom or ':-'")
        self.expect(".")
        b.add(head, pos, neg)

    def literal(self):
        tok = self.tok
        nxt = self.toks[self.i + 1]
        if tok.kind == "ident" and tok.text == "not" and nxt.kind in ("ident", "var"):
            self.i += 1
            return True, self.atom()
        return False, self.atom()

    def atom(self) -> str:
        tok = self.tok
        if tok.kind == "var":
            raise self.error(f"expected a predicate name, found {tok.text!r}")
        name = self.expect("ident").text
        if self.tok.kind == "(":
            name += self.arguments()
        if any(c.isspace() for c in name):
            raise self.error(f"atom name {name!r} contains whitespace", tok)
        return name

    def arguments(self) -> str:
        self.expect("(")
        args = [self.term()]
        while self.tok.kind == ",":
            self.i += 1
            args.append(self.term())
        self.expect(")")
        return "(" + ",".join(args) + ")"

    def term(self) -> str:
        tok = self.tok
        if tok.kind == "var":
            raise self.error(f"non-ground input: variable {tok.text!r}", cls=NonGroundError)
        if tok.kind in ("number", "string"):
            self.i += 1
            return tok.text
        name = self.expect("ident").text
        if self.tok.kind == "(":
            name += self.arguments()
        return name


def parse_program(text: str) -> GroundProgram:
    """Parse a ground program in the native ``h :- b, not c.`` syntax.

    ``#external f.`` is read back as the fact ``f.``.
    """
    return _Parser(text).program()


def _render_rule(program: GroundProgram, rule: Rule) -> str:
    names = program.names
    body = [names[a] for a in sorted(rule.pos)] + ["not " + names[a] for a in sorted(rule.neg)]
    head = "" if rule.head is None else names[rule.head]
    if rule.is_fact:
        return head + "."
    if head:
        return f"{head} :- {', '.join(body)}."
    return f":- {', '.join(body)}." if body else ":- ."


def render_program(program: GroundProgram) -> str:
    """Native text for ``program``, one rule per line in source order."""
    return "".join(_render_rule(program, r) + "\n" for r in program.rules)


def externalize_facts(program: GroundProgram) -> str:
    """Native text with every fact ``f.`` written as ``#external f.``."""
    lines = []
    for r in program.rules:
        if r.is_fact:
            lines.append(f"#external {program.names[r.head]}.")
        else:
            lines.append(_render_rule(program, r))
    return "".join(line + "\n" for line in lines)


# --- aspif ------------------------------------------------------------------

def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise AspifError("expected integers", lineno, 1) from None


def parse_aspif(text: str) -> GroundProgram:
    """Read the normal-program fragment of aspif (statement types 1, 4, 5).

    ``5 i 2`` externals become facts; atoms without an output entry are
    named ``_x<i>``.
    """
    lines = text.splitlines()
    if not lines or lines[0].split() != ["asp", "1", "0", "0"]:
        raise AspifError("missing or malformed 'asp 1 0 0' header", 1, 1)

    statements = []
    symbols: dict[int, str] = {}
    always_true: list[str] = []
    terminated = False
    for lineno, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if not parts:
            continue
        if terminated:
            raise AspifError("statement after the '0' terminator", lineno, 1)
        kind = _ints(parts[:1], lineno)[0]
        nums = _ints(parts, lineno) if kind != 4 else None
        if kind == 0:
            if len(nums) != 1:
                raise AspifError("malformed terminator", lineno, 1)
            terminated = True
        elif kind == 1:
            statements.append((lineno, _aspif_rule(nums, lineno)))
        elif kind == 4:
            name, cond = _aspif_output(parts, lineno)
            if cond is None:
                always_true.append(name)
            elif symbols.setdefault(cond, name) != name:
                raise AspifError(f"atom {cond} has two output names", lineno, 1)
        elif kind == 5:
            if len(nums) != 3 or nums[1] <= 0:
                raise AspifError("malformed external statement", lineno, 1)
            if nums[2] != 2:
                raise AspifError(f"unsupported external value {nums[2]} (only 2 is accepted)",
                                 lineno, 1)
            statements.append((lineno, (nums[1], (), ())))
        else:
            raise AspifError(f"unsupported statement type {kind}", lineno, 1)
    if not terminated:
        raise AspifError("missing '0' terminator", len(lines), 1)

    heads = {h for _, (h, _, _) in statements if h is not None}
    b = ProgramBuilder()

    def name_of(i, lineno):
        if i in symbols:
            return symbols[i]
        if i not in heads:
            warnings.warn(f"line {lineno}: body atom {i} has no output name and no rule; "
                          f"naming it _x{i}", AspifWarning, stacklevel=3)
        return f"_x{i}"

    for lineno, (h, pos, neg) in statements:
        head = None if h is None else b.intern(symbols.get(h, f"_x{h}"))
        b.add(head, [b.intern(name_of(a, lineno)) for a in pos],
              [b.intern(name_of(a, lineno)) for a in neg])
    for name in always_true:
        b.add(b.intern(name))
    return b.build()


def _aspif_rule(nums, lineno):
    # 1 <head type> <n> <heads...> <body type> <k> <lits...>
    # A headless rule may also carry an explicit 0 head slot ("1 0 0 0 0 k ...");
    # the two layouts are distinguishable by length.
    if len(nums) >= 6 and nums[1:5] == [0, 0, 0, 0] and len(nums) == 6 + nums[5]:
        nums = nums[:3] + nums[4:]
    try:
        head_type, n = nums[1], nums[2]
        heads = nums[3:3 + n]
        body_type, k = nums[3 + n], nums[4 + n]
        lits = nums[5 + n:]
    except IndexError:
        raise AspifError("truncated rule statement", lineno, 1) from None
    if head_type != 0:
        raise AspifError("choice rules are not supported", lineno, 1)
    if body_type != 0:
        raise AspifError("weight bodies are not supported", lineno, 1)
    if n > 1:
        raise AspifError("disjunctive heads are not supported", lineno, 1)
    if len(heads) != n or len(lits) != k or 0 in lits or any(h <= 0 for h in heads):
        raise AspifError("malformed rule statement", lineno, 1)
    head = heads[0] if n else None
    return head, tuple(l for l in lits if l > 0), tuple(-l for l in lits if l < 0)


def _aspif_output(parts, lineno):
    # 4 <m> <name> <k> <lits...>
    if len(parts) < 4:
        raise AspifError("truncated output statement", lineno, 1)
    name = parts[2]
    try:
        m, k = int(parts[1]), int(parts[3])
        lits = [int(t) for t in parts[4:]]
    except ValueError:
        raise AspifError("malformed output statement", lineno, 1) from None
    if len(name.encode()) != m:
        raise AspifError(f"output name length {m} does not match {name!r}", lineno, 1)
    if len(lits) != k:
        raise AspifError("malformed output statement", lineno, 1)
    try:
        _check_atom_name(name)
    except ValueError as exc:
        raise AspifError(str(exc), lineno, 1) from None
    if k == 0:
        return name, None
    if k != 1 or lits[0] <= 0:
        raise AspifError("output conditions other than a single positive atom are not supported",
                         lineno, 1)
    return name, lits[0]


def emit_aspif(program: GroundProgram) -> str:
    """aspif text for ``program``; facts are written as ``5 i 2`` externals."""
    out = ["asp 1 0 0"]
    for r in program.rules:
        if r.is_fact:
            out.append(f"5 {r.head + 1} 2")
            continue
        head = "0 0" if r.head is None else f"1 {r.head + 1}"
        lits = [str(a + 1) for a in sorted(r.pos)] + [str(-(a + 1)) for a in sorted(r.neg)]
        out.append(" ".join(["1 0", head, "0", str(len(lits))] + lits))
    for i, name in enumerate(program.names):
        out.append(f"4 {len(name.encode())} {name} 1 {i + 1}")
    out.append("0")
    return "\n".join(out) + "\n"
