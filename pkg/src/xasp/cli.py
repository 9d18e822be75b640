"""Command-line interface.

Exit codes: 0 ok, 2 usage or input error, 3 resource cap hit, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import re
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ._walk import DEFAULT_SELECTION_CAP
from .assumption import BASES, analyze_assumptions
from .errors import (InternalInvariantError, NotAnAnswerSetError, ParseError,
                     ResourceLimitError, SelectionCapWarning)
from .explanation import explanation_graphs, validate_explanation_graph
from .program import GroundProgram, parse_aspif, parse_program
from .serialize import GraphDocument, emit_dot, format_atoms, format_graph_text, program_digest
from .solver import (DEFAULT_BRANCHING_CAP, cautious_consequences, enumerate_answer_sets,
                     is_answer_set, well_founded_model)
from .support import build_support_table, format_support_set

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input_path: str
    input_format: str = "native"
    answer_set_index: int = 0
    answer_set_lits: Optional[list] = None
    all_answer_sets: bool = False
    atom_query: Optional[str] = None
    assumption_selector: str = "0"
    output_format: Optional[str] = None
    out_dir: Optional[str] = None
    limit: Optional[int] = None
    branching_cap: int = DEFAULT_BRANCHING_CAP
    selection_cap: int = DEFAULT_SELECTION_CAP
    tentative_basis: str = "cautious"

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        lits = None
        if args.answer_set_lits is not None:
            lits = [s.strip() for s in args.answer_set_lits.split(",") if s.strip()]
        return cls(
            input_path=args.input,
            input_format=args.format,
            answer_set_index=args.answer_set if args.answer_set is not None else 0,
            answer_set_lits=lits,
            all_answer_sets=args.all,
            atom_query=getattr(args, "atom", None),
            assumption_selector=getattr(args, "assumption_set", "0"),
            output_format=args.output,
            out_dir=getattr(args, "out_dir", None),
            limit=getattr(args, "limit", None),
            branching_cap=args.branching_cap,
            selection_cap=args.selection_cap,
            tentative_basis=getattr(args, "tentative_basis", "cautious"),
        )


class _Style:
    def __init__(self):
        self.enabled = os.environ.get("XASP_COLOR", "0") == "1"

    def head(self, text: str) -> str:
        return f"\033[1m{text}\033[0m" if self.enabled else text


def load_program(cfg: RunConfig) -> GroundProgram:
    try:
        text = Path(cfg.input_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input_path}: {exc.strerror}") from None
    if cfg.input_format == "aspif":
        return parse_aspif(text)
    return parse_program(text)


def select_answer_sets(program: GroundProgram, cfg: RunConfig, answer_sets=None) -> list:
    """Return ``[(index, answer_set)]`` per the selector; index is None for explicit sets."""
    if cfg.answer_set_lits is not None:
        unknown = [n for n in cfg.answer_set_lits if n not in program.ids]
        if unknown:
            raise UsageError(f"unknown atom(s) in answer set: {', '.join(unknown)}")
        chosen = program.interpretation(cfg.answer_set_lits)
        if not is_answer_set(program, chosen):
            raise UsageError(f"{format_atoms(program, chosen)} is not an answer set")
        return [(None, chosen)]
    if answer_sets is None:
        answer_sets = enumerate_answer_sets(program, branching_cap=cfg.branching_cap)
    if cfg.all_answer_sets:
        return list(enumerate(answer_sets))
    i = cfg.answer_set_index
    if not 0 <= i < len(answer_sets):
        raise UsageError(f"answer set index {i} out of range ({len(answer_sets)} answer set(s))")
    return [(i, answer_sets[i])]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def cmd_solve(cfg: RunConfig, out) -> int:
    program = load_program(cfg)
    answer_sets = enumerate_answer_sets(program, limit=cfg.limit, branching_cap=cfg.branching_cap)
    if cfg.output_format == "structured":
        out.write(_dump({"answer_sets": [program.sorted_names(a) for a in answer_sets],
                         "count": len(answer_sets)}))
        return EXIT_OK
    for a in answer_sets:
        out.write(format_atoms(program, a) + "\n")
    out.write(f"{len(answer_sets)} answer set(s)\n")
    return EXIT_OK


def cmd_cautious(cfg: RunConfig, out) -> int:
    program = load_program(cfg)
    cc = cautious_consequences(program, branching_cap=cfg.branching_cap)
    if cfg.output_format == "structured":
        out.write(_dump({"c_plus": program.sorted_names(cc.c_plus),
                         "c_minus": program.sorted_names(cc.c_minus),
                         "inconsistent": cc.inconsistent}))
        return EXIT_OK
    style = _Style()
    out.write(f"{style.head('C+')} = {format_atoms(program, cc.c_plus)}\n")
    out.write(f"{style.head('C-')} = {format_atoms(program, cc.c_minus)}\n")
    if cc.inconsistent:
        out.write("inconsistent: no answer sets\n")
    return EXIT_OK


def cmd_wf(cfg: RunConfig, out) -> int:
    program = load_program(cfg)
    wf = well_founded_model(program)
    if cfg.output_format == "structured":
        out.write(_dump({"true": program.sorted_names(wf.wf_true),
                         "false": program.sorted_names(wf.wf_false),
                         "unknown": program.sorted_names(wf.unknown)}))
        return EXIT_OK
    style = _Style()
    for label, atoms in (("true", wf.wf_true), ("false", wf.wf_false), ("unknown", wf.unknown)):
        out.write(f"{style.head(label)} = {format_atoms(program, atoms)}\n")
    return EXIT_OK


def _answer_set_header(program, index, answer_set) -> str:
    tag = "given" if index is None else str(index)
    return f"Answer set {tag}: {format_atoms(program, answer_set)}"


def cmd_supports(cfg: RunConfig, out) -> int:
    program = load_program(cfg)
    selected = select_answer_sets(program, cfg)
    style = _Style()
    structured = []
    for index, answer_set in selected:
        table = build_support_table(program, answer_set)
        entries = {program.lit_str(k): [format_support_set(program, s) for s in v]
                   for k, v in table.items()}
        if cfg.output_format == "structured":
            structured.append({"answer_set": program.sorted_names(answer_set),
                               "supports": entries})
            continue
        if len(selected) > 1:
            out.write(style.head(_answer_set_header(program, index, answer_set)) + "\n")
        out.write(table.to_text())
    if cfg.output_format == "structured":
        out.write(_dump(structured if len(selected) > 1 else structured[0]))
    return EXIT_OK


def cmd_assumptions(cfg: RunConfig, out) -> int:
    program = load_program(cfg)
    answer_sets = enumerate_answer_sets(program, branching_cap=cfg.branching_cap)
    cc = cautious_consequences(program, answer_sets)
    selected = select_answer_sets(program, cfg, answer_sets)
    style = _Style()
    structured = []
    for index, answer_set in selected:
        an = analyze_assumptions(program, answer_set, cc, basis=cfg.tentative_basis,
                                 selection_cap=cfg.selection_cap)
        ta = an.tentative
        if cfg.output_format == "structured":
            structured.append({
                "answer_set": program.sorted_names(answer_set),
                "tentative": program.sorted_names(ta.atoms),
                "must_assume": program.sorted_names(ta.must_assume),
                "dependencies": {program.names[a]: program.sorted_names(d)
                                 for a, d in sorted(ta.dependencies.items())},
                "minimal_sets": [program.sorted_names(u) for u in an.minimal_sets],
            })
            continue
        if len(selected) > 1:
            out.write(style.head(_answer_set_header(program, index, answer_set)) + "\n")
        out.write(f"TA = {format_atoms(program, ta.atoms)}\n")
        out.write(f"T = {format_atoms(program, ta.must_assume)}\n")
        out.write("DA = {" + ", ".join(
            f"{program.names[a]}: {format_atoms(program, d)}"
            for a, d in sorted(ta.dependencies.items(), key=lambda kv: program.names[kv[0]])
        ) + "}\n")
        for i, u in enumerate(an.minimal_sets):
            out.write(f"U{i} = {format_atoms(program, u)}\n")
    if cfg.output_format == "structured":
        out.write(_dump(structured if len(selected) > 1 else structured[0]))
    return EXIT_OK


_UNSAFE_FILENAME = re.compile(r"[^A-Za-z0-9_.-]")


def _file_stem(atom: str, a_index, u_index: int, g_index: int, multi: bool) -> str:
    stem = _UNSAFE_FILENAME.sub("_", atom)
    if multi:
        return f"explain_{stem}_a{a_index}_{u_index}_{g_index}"
    return f"explain_{stem}_{u_index}_{g_index}"


def cmd_explain(cfg: RunConfig, out) -> int:
    if not cfg.atom_query:
        raise UsageError("explain requires --atom")
    program = load_program(cfg)
    if cfg.atom_query not in program.ids:
        close = difflib.get_close_matches(cfg.atom_query, program.names, n=3)
        hint = f" (did you mean: {', '.join(close)}?)" if close else ""
        raise UsageError(f"unknown atom {cfg.atom_query!r}{hint}")
    atom = program.atom(cfg.atom_query)
    answer_sets = None
    if cfg.answer_set_lits is None:
        answer_sets = enumerate_answer_sets(program, branching_cap=cfg.branching_cap)
    cc = None
    if cfg.tentative_basis == "cautious":
        cc = cautious_consequences(program, answer_sets, branching_cap=cfg.branching_cap)
    selected = select_answer_sets(program, cfg, answer_sets)
    digest = program_digest(program)
    fmt = cfg.output_format or "dot"
    multi = len(selected) > 1
    if cfg.out_dir:
        Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)

    for a_index, answer_set in selected:
        table = build_support_table(program, answer_set)
        an = analyze_assumptions(program, answer_set, cc, table, basis=cfg.tentative_basis,
                                 selection_cap=cfg.selection_cap)
        sets = list(enumerate(an.minimal_sets))
        if cfg.assumption_selector != "all":
            try:
                k = int(cfg.assumption_selector)
            except ValueError:
                raise UsageError("--assumption-set takes an index or 'all'") from None
            if not 0 <= k < len(sets):
                raise UsageError(f"assumption set index {k} out of range "
                                 f"({len(sets)} minimal assumption set(s))")
            sets = [sets[k]]
        for u_index, u in sets:
            graphs = explanation_graphs(atom, table, u, cfg.selection_cap)
            if not graphs:
                print(f"xasp: note: no explanation graph of {cfg.atom_query} under "
                      f"U = {format_atoms(program, u)}", file=sys.stderr)
            for g_index, g in enumerate(graphs):
                report = validate_explanation_graph(g, program, answer_set, u)
                if not report:
                    raise InternalInvariantError(
                        f"generated graph failed validation: {report.reason} at {report.offender}")
                doc = GraphDocument.from_graph(g, program, answer_set, u, digest)
                stem = _file_stem(cfg.atom_query, a_index, u_index, g_index, multi)
                if fmt == "dot":
                    text, ext = emit_dot(doc, stem), ".dot"
                elif fmt == "structured":
                    text, ext = doc.to_json() + "\n", ".json"
                else:
                    text, ext = format_graph_text(doc), ".txt"
                if cfg.out_dir:
                    Path(cfg.out_dir, stem + ext).write_text(text, encoding="utf-8")
                elif fmt == "structured":
                    out.write(doc.to_json(indent=None) + "\n")
                else:
                    out.write(text)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "cautious": cmd_cautious,
    "wf": cmd_wf,
    "supports": cmd_supports,
    "assumptions": cmd_assumptions,
    "explain": cmd_explain,
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="program file")
    common.add_argument("--format", choices=["native", "aspif"], default="native")
    common.add_argument("--output", choices=["dot", "structured", "text"], default=None)
    common.add_argument("--branching-cap", type=_positive_int, default=DEFAULT_BRANCHING_CAP)
    common.add_argument("--selection-cap", type=_positive_int, default=DEFAULT_SELECTION_CAP)

    selector = argparse.ArgumentParser(add_help=False)
    group = selector.add_mutually_exclusive_group()
    group.add_argument("--answer-set", type=int, metavar="IDX",
                       help="0-based index into the sorted answer sets (default 0)")
    group.add_argument("--answer-set-lits", metavar="A,B,...",
                       help="explicit answer set, verified before use")
    group.add_argument("--all", action="store_true", help="every answer set")

    parser = argparse.ArgumentParser(
        prog="xasp", description="Answer sets, supports, assumptions and explanation graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", parents=[common], help="enumerate answer sets")
    p.add_argument("--limit", type=_positive_int)
    p.set_defaults(answer_set=None, answer_set_lits=None, all=False)
    for name, help_ in (("cautious", "cautious consequences"),
                        ("wf", "well-founded model")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(answer_set=None, answer_set_lits=None, all=False)
    basis = argparse.ArgumentParser(add_help=False)
    basis.add_argument("--tentative-basis", choices=BASES, default="cautious",
                       help="which decided atoms are excluded from tentative assumptions")

    sub.add_parser("supports", parents=[common, selector], help="support table")
    sub.add_parser("assumptions", parents=[common, selector, basis],
                   help="minimal assumption sets")
    p = sub.add_parser("explain", parents=[common, selector, basis], help="explanation graphs")
    p.add_argument("--atom", required=True)
    p.add_argument("--assumption-set", default="0", metavar="IDX|all")
    p.add_argument("--out-dir")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", SelectionCapWarning)
            return COMMANDS[args.command](cfg, out)
    except (UsageError, ParseError, NotAnAnswerSetError) as exc:
        print(f"xasp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"xasp: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalInvariantError as exc:
        print(f"xasp: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
