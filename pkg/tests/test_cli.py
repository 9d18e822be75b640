import io
import json
import subprocess
import sys

import pytest

from xasp import GraphDocument, parse_program
from xasp.cli import EXIT_INTERNAL, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main

BOB_A = ("day(monday),day(tuesday),day(wednesday),day(thursday),day(friday),day(saturday),"
         "day(sunday),home(monday),home(tuesday),baby(tuesday),opera(wednesday),"
         "opera(thursday),opera(friday),opera(saturday),opera(sunday)")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def p1_path(data_dir):
    return str(data_dir / "p1.lp")


@pytest.fixture
def bob_path(data_dir):
    return str(data_dir / "bob.lp")


@pytest.fixture
def write(tmp_path):
    def _write(text, name="prog.lp"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


class TestSolve:
    def test_p1(self, p1_path):
        assert run("solve", "--input", p1_path) == (
            EXIT_OK, "{b,e,f}\n{a,c,e,k}\n2 answer set(s)\n")

    def test_aspif(self, data_dir):
        code, out = run("solve", "--input", str(data_dir / "p1.aspif"), "--format", "aspif")
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "2 answer set(s)"
        assert "{b,e,f}" in out.splitlines()

    def test_bob(self, bob_path):
        code, out = run("solve", "--input", bob_path)
        assert code == EXIT_OK and out.endswith("32 answer set(s)\n")

    def test_inconsistent(self, write):
        assert run("solve", "--input", write("p. :- p.")) == (EXIT_OK, "0 answer set(s)\n")

    def test_limit(self, bob_path):
        code, out = run("solve", "--input", bob_path, "--limit", "2")
        assert out.endswith("2 answer set(s)\n")

    def test_structured(self, p1_path):
        code, out = run("solve", "--input", p1_path, "--output", "structured")
        assert json.loads(out) == {"answer_sets": [["b", "e", "f"], ["a", "k", "e", "c"]],
                                   "count": 2}

    def test_branching_cap(self, bob_path, capsys):
        code, _ = run("solve", "--input", bob_path, "--branching-cap", "3")
        assert code == EXIT_RESOURCE
        assert "branching cap" in capsys.readouterr().err


class TestInspect:
    def test_cautious(self, p1_path):
        assert run("cautious", "--input", p1_path) == (EXIT_OK, "C+ = {e}\nC- = {}\n")

    def test_cautious_inconsistent(self, write):
        code, out = run("cautious", "--input", write("p. :- p."))
        assert "inconsistent" in out

    def test_wf(self, p1_path):
        assert run("wf", "--input", p1_path) == (
            EXIT_OK, "true = {e}\nfalse = {}\nunknown = {a,b,c,f,k}\n")

    def test_supports(self, p1_path):
        code, out = run("supports", "--input", p1_path)
        assert out == ("~a : [{~k}, {b}]\n~k : [{b}]\nb : [{~a}]\ne : [{T}]\n"
                       "~c : [{~a, ~k}]\nf : [{~k, e, ~c}]\n")

    def test_supports_all(self, p1_path):
        code, out = run("supports", "--input", p1_path, "--all")
        assert "Answer set 0: {b,e,f}" in out and "Answer set 1: {a,c,e,k}" in out

    def test_assumptions(self, p1_path):
        assert run("assumptions", "--input", p1_path) == (EXIT_OK, (
            "TA = {a,c,k}\nT = {}\nDA = {a: {k}, c: {a,k}, k: {a}}\nU0 = {a}\nU1 = {k}\n"))

    def test_assumptions_structured(self, p1_path):
        code, out = run("assumptions", "--input", p1_path, "--output", "structured")
        data = json.loads(out)
        assert data["minimal_sets"] == [["a"], ["k"]]
        assert data["must_assume"] == []

    def test_tentative_basis(self, write):
        path = write("q :- not p. p :- not q, not p.")
        _, cautious = run("assumptions", "--input", path)
        _, wf = run("assumptions", "--input", path, "--tentative-basis", "well-founded")
        assert "U0 = {}" in cautious
        assert "U0 = {p}" in wf

    def test_color(self, p1_path, monkeypatch):
        monkeypatch.setenv("XASP_COLOR", "1")
        _, out = run("cautious", "--input", p1_path)
        assert "\033[1mC+\033[0m" in out
        monkeypatch.setenv("XASP_COLOR", "0")
        _, out = run("cautious", "--input", p1_path)
        assert "\033[" not in out


class TestExplain:
    def test_one_document_per_assumption_set(self, p1_path, tmp_path):
        out_dir = tmp_path / "out"
        code, out = run("explain", "--input", p1_path, "--atom", "f", "--assumption-set", "all",
                        "--output", "structured", "--out-dir", str(out_dir))
        assert code == EXIT_OK and out == ""
        files = sorted(p.name for p in out_dir.iterdir())
        assert files == ["explain_f_0_0.json", "explain_f_1_0.json"]
        left = GraphDocument.from_json((out_dir / files[0]).read_text())
        right = GraphDocument.from_json((out_dir / files[1]).read_text())
        assert left.assumption_set == ("a",) and right.assumption_set == ("k",)
        assert "b" in {n for _, _, n in left.nodes}
        assert "b" not in {n for _, _, n in right.nodes}
        assert len(right.nodes) == 7

    def test_dot(self, p1_path):
        code, out = run("explain", "--input", p1_path, "--atom", "e")
        assert out == ('digraph "explain_e_0_0" {\n'
                       '  n0 [label="e", shape=ellipse];\n'
                       '  n1 [label="⊤", shape=box];\n'
                       '  n0 -> n1 [label="+"];\n}\n')

    def test_dot_under_second_assumption_set(self, p1_path):
        code, out = run("explain", "--input", p1_path, "--atom", "f", "--assumption-set", "1")
        assert '[label="assume", shape=box]' in out
        assert '[label="b"' not in out
        assert out.count("shape=") == 7
        assert '[label="~k", shape=ellipse]' in out

    def test_structured_stdout_round_trip(self, p1_path):
        code, out = run("explain", "--input", p1_path, "--atom", "f", "--assumption-set", "all",
                        "--output", "structured")
        docs = [GraphDocument.from_json(line) for line in out.splitlines()]
        assert len(docs) == 2
        p = parse_program(open(p1_path).read())
        for d in docs:
            assert GraphDocument.from_json(d.to_json()) == d
            assert GraphDocument.from_dict(d.to_dict()) == d
            assert d.to_graph(p).root == p.parse_lit("f")

    def test_all_answer_sets_file_names(self, p1_path, tmp_path):
        run("explain", "--input", p1_path, "--atom", "c", "--all", "--out-dir", str(tmp_path))
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names[0].startswith("explain_c_a0_0_") and names[-1].startswith("explain_c_a1_0_")

    def test_unsafe_file_name(self, bob_path, tmp_path):
        run("explain", "--input", bob_path, "--atom", "home(monday)", "--answer-set-lits", BOB_A,
            "--out-dir", str(tmp_path), "--output", "text")
        assert sorted(p.name for p in tmp_path.iterdir())[0] == "explain_home_monday__0_0.txt"

    def test_bob(self, bob_path):
        code, out = run("explain", "--input", bob_path, "--atom", "home(monday)",
                        "--answer-set-lits", BOB_A, "--output", "text")
        assert code == EXIT_OK
        assert "  home(monday) -> ⊤ (+)\n" in out
        code, out = run("explain", "--input", bob_path, "--atom", "opera(friday)",
                        "--answer-set-lits", BOB_A, "--output", "text",
                        "--assumption-set", "all")
        assert "  ~home(friday) -> assume (o)\n" in out

    def test_eye(self, data_dir):
        code, out = run("explain", "--input", str(data_dir / "eye.lp"),
                        "--atom", "intraocularLens", "--output", "text")
        for line in ("intraocularLens -> correctiveLens (+)", "~laserSurgery -> tightOnMoney (-)",
                     "tightOnMoney -> ~richParents (-)", "~glasses -> caresPracticality (-)"):
            assert f"  {line}\n" in out

    def test_byte_determinism(self, bob_path, tmp_path):
        outs = []
        for i in range(2):
            d = tmp_path / str(i)
            run("explain", "--input", bob_path, "--atom", "opera(friday)", "--all",
                "--assumption-set", "all", "--out-dir", str(d))
            outs.append({p.name: p.read_bytes() for p in d.iterdir()})
        assert outs[0] == outs[1] and outs[0]

    def test_no_graph_note(self, write, capsys):
        code, out = run("explain", "--input", write("q :- not p. p :- not q, not p."),
                        "--atom", "p")
        assert code == EXIT_OK and out == ""
        assert "no explanation graph" in capsys.readouterr().err

    def test_validation_failure_is_internal_error(self, p1_path, monkeypatch):
        from xasp import cli
        from xasp.explanation import ValidationReport
        monkeypatch.setattr(cli, "validate_explanation_graph",
                            lambda *a: ValidationReport(False, "forced", None))
        code, _ = run("explain", "--input", p1_path, "--atom", "f")
        assert code == EXIT_INTERNAL


class TestErrors:
    def test_missing_file(self, tmp_path):
        assert run("solve", "--input", str(tmp_path / "nope.lp"))[0] == EXIT_USAGE

    def test_parse_error(self, write, capsys):
        assert run("solve", "--input", write("a :- b"))[0] == EXIT_USAGE
        assert "1:7" in capsys.readouterr().err

    def test_nonground(self, write):
        assert run("solve", "--input", write("p(X) :- q(X)."))[0] == EXIT_USAGE

    def test_bad_aspif(self, write):
        assert run("solve", "--input", write("asp 1 0 0\n5 1 0\n0\n"), "--format", "aspif")[0] \
            == EXIT_USAGE

    def test_not_an_answer_set(self, p1_path, capsys):
        code, _ = run("supports", "--input", p1_path, "--answer-set-lits", "a,b")
        assert code == EXIT_USAGE
        assert "not an answer set" in capsys.readouterr().err

    def test_unknown_atom_in_answer_set(self, p1_path):
        assert run("supports", "--input", p1_path, "--answer-set-lits", "zz")[0] == EXIT_USAGE

    def test_answer_set_index_out_of_range(self, p1_path):
        assert run("supports", "--input", p1_path, "--answer-set", "5")[0] == EXIT_USAGE

    def test_unknown_atom_suggestion(self, bob_path, capsys):
        assert run("explain", "--input", bob_path, "--atom", "home(mondai)")[0] == EXIT_USAGE
        assert "did you mean: home(monday)" in capsys.readouterr().err

    def test_assumption_index(self, p1_path):
        assert run("explain", "--input", p1_path, "--atom", "f",
                   "--assumption-set", "9")[0] == EXIT_USAGE
        assert run("explain", "--input", p1_path, "--atom", "f",
                   "--assumption-set", "x")[0] == EXIT_USAGE

    def test_inconsistent_explain(self, write):
        assert run("explain", "--input", write("p. :- p."), "--atom", "p")[0] == EXIT_USAGE

    def test_argparse_usage(self, p1_path):
        with pytest.raises(SystemExit) as exc:
            run("explain", "--input", p1_path)
        assert exc.value.code == EXIT_USAGE
        with pytest.raises(SystemExit) as exc:
            run("solve", "--input", p1_path, "--answer-set", "0")
        assert exc.value.code == EXIT_USAGE

    def test_exclusive_selectors(self, p1_path):
        with pytest.raises(SystemExit) as exc:
            run("supports", "--input", p1_path, "--all", "--answer-set", "1")
        assert exc.value.code == EXIT_USAGE


def test_module_entry_point(p1_path):
    proc = subprocess.run([sys.executable, "-m", "xasp", "solve", "--input", p1_path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "{b,e,f}\n{a,c,e,k}\n2 answer set(s)\n"
