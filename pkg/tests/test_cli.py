import io
import json

import pytest

from intuit.cli import main
from intuit.formula import print_formula

import corpus


def run(capsys, monkeypatch, *argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda *argv, stdin=None: run(capsys, monkeypatch, *argv, stdin=stdin)


def test_prove_with_term(cli):
    code, out, _ = cli("prove", "p -> p", "--term")
    assert code == 0
    lines = out.splitlines()
    assert lines[:2] == ["provable", "witness: \\x:p. x"]
    assert "begin transcript" in lines and "term: \\x:p. x" in lines


def test_prove_with_refutation(cli):
    code, out, _ = cli("prove", "((p->q)->p)->p", "--refute", "3")
    assert code == 1
    assert out.startswith("unprovable\ncountermodel (2 states")
    code, out, _ = cli("prove", "(~p->q)->(~r->q)->(p->~r)->q", "--refute", "3")
    assert code == 1 and "countermodel (3 states" in out
    code, out, _ = cli("prove", "(~p->q)->(~r->q)->(p->~r)->q", "--refute", "2")
    assert code == 1 and "no countermodel with at most 2 states" in out
    code, out, _ = cli("prove", "p \\/ ~p", "--refute")
    assert code == 1 and "countermodel (2 states" in out


def test_transcripts_verify(cli, tmp_path):
    for argv in (("prove", "p /\\ q -> q /\\ p", "--term"), ("prove", "~~p -> p", "--refute")):
        _, out, _ = cli(*argv)
        path = tmp_path / "t.txt"
        path.write_text(out)
        code, report, _ = cli("verify", str(path))
        assert code == 0 and report.endswith("verified\n")
    forged = "begin transcript\ngoal: p\nterm: \\x:p. x\nend transcript\n"
    code, report, _ = cli("verify", "-", stdin=forged)
    assert code == 1 and "FAILED" in report
    code, _, _ = cli("verify", "-", stdin="nothing here")
    assert code == 2


def test_sequents_and_fragments(cli):
    code, out, _ = cli("prove", "p, p -> q |- q", "--term")
    assert code == 0 and "witness: a1 a0" in out
    assert cli("prove", "p -> p", "--fragment", "iipc")[0] == 0
    assert cli("prove", "p /\\ q -> p", "--fragment", "iipc")[0] == 2


def test_parse_errors_exit_2(cli):
    code, out, err = cli("prove", "p ->")
    assert code == 2 and err.startswith("error:")
    assert cli("classify", "(p")[0] == 2
    assert cli("check", "\\x:p. x", "p ->")[0] == 2


def test_json_envelope(cli):
    code, out, _ = cli("prove", "p -> p", "--term", "--json")
    data = json.loads(out)
    assert data["command"] == "prove" and data["exit"] == 0 and data["witness"] == "\\x:p. x"
    code, out, _ = cli("prove", "p ->", "--json")
    assert code == 2 and json.loads(out)["exit"] == 2


def test_check(cli):
    assert cli("check", "\\x:p. x", "p -> p")[1] == "ok\nlong normal: yes\n"
    code, out, _ = cli("check", "(\\x:p. x) y", "p", "--hyp", "y:p")
    assert code == 0 and "long normal: no" in out
    code, out, _ = cli("check", "\\x:p. x", "q -> q")
    assert code == 1 and out.startswith("type error")
    assert cli("check", "x", "p", "--hyp", "nonsense")[0] == 2


def test_reduce(cli):
    code, out, _ = cli("reduce", "(((p1->p2)->p3)->p4)->p5", "--to", "classical3")
    assert out == "(p1 -> (p2 -> p5) -> p4) -> (p3 -> p4) -> p5\n"
    _, out, _ = cli("reduce", "p -> p", "--to", "iipc3")
    code, report, _ = cli("classify", out.strip())
    assert "implicational: yes" in report
    order = int(next(line for line in report.splitlines() if line.startswith("order:")).split()[1])
    assert order <= 3
    _, automaton, _ = cli("reduce", "p /\\ q -> q", "--to", "automaton")
    code, out, _ = cli("automaton", "run", "-", "--witness", stdin=automaton)
    assert code == 0 and out.startswith("accepting") and out.endswith("witness consistent\n")
    assert cli("reduce", "p -> false", "--to", "classical3")[0] == 2


def test_encode(cli, tmp_path):
    unsat = tmp_path / "unsat.cnf"
    unsat.write_text("c p and not p\np cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
    sat = tmp_path / "sat.cnf"
    sat.write_text("p cnf 2 2\n1 -2 2 0\n-1 -1 2 0\n")
    short = tmp_path / "short.cnf"
    short.write_text("p cnf 2 1\n1 -2 0\n")
    _, out, _ = cli("encode", str(unsat), "--mode", "conp")
    assert out.splitlines()[0].startswith("# X1 = ")
    assert cli("prove", "-", stdin=out)[0] == 0
    _, out, _ = cli("encode", str(sat), "--mode", "conp")
    assert cli("prove", "-", stdin=out)[0] == 1
    _, out, _ = cli("encode", str(sat), "--mode", "np")
    assert cli("prove", "-", stdin=out)[0] == 0
    _, out, _ = cli("encode", str(unsat), "--mode", "np")
    assert cli("prove", "-", stdin=out)[0] == 1
    assert cli("encode", str(short), "--mode", "np")[0] == 2
    assert cli("encode", str(short), "--mode", "np", "--pad")[0] == 0


DFA = """\
# parity of a's: accepts the word aa
states: q0 q1 q2 f
registers: r0_0 r0_1 r1_0 r1_1 r2_0 r2_1
final: f
init: q0 {r0_0}
q0: check {r0_0} set {r1_1} goto q1
q0: check {r0_1} set {r1_0} goto q1
q1: check {r1_0} set {r2_1} goto q2
q1: check {r1_1} set {r2_0} goto q2
q2: check {r2_0} set {} goto f
"""


def test_automaton_commands(cli, tmp_path):
    path = tmp_path / "dfa.aut"
    path.write_text(DFA)
    assert cli("automaton", "run", str(path))[1] == "accepting\n"
    code, out, _ = cli("automaton", "run", str(path), "--init", "q0 {r0_1}")
    assert code == 1 and out == "rejecting\n"
    assert cli("automaton", "validate", str(path)) == (0, "no defects\n", "")
    broken = tmp_path / "broken.aut"
    broken.write_text(DFA.replace("goto q2\nq2", "goto q9\nq2"))
    code, out, _ = cli("automaton", "validate", str(broken))
    assert code == 1 and len(out.splitlines()) == 1 and "unknown state q9" in out
    assert cli("automaton", "run", str(broken))[0] == 2
    no_init = tmp_path / "no_init.aut"
    no_init.write_text(DFA.replace("init: q0 {r0_0}\n", ""))
    assert cli("automaton", "run", str(no_init))[0] == 2


def test_classify(cli):
    _, out, _ = cli("classify", "p -> p")
    assert "implicational: yes\norder: 1\n" in out
    _, out, _ = cli("classify", "(((p1->p2)->p3)->p4)->p5")
    assert "order: 4" in out
    _, out, _ = cli("classify", "(~p->q)->q")
    assert "order-two-plus: yes" in out
    _, out, _ = cli("classify", "((p1 -> q2) -> q1) -> q1")
    assert "T3-: yes" in out and "data: p1" in out and "control: q1 q2" in out


def test_comments_and_stdin(cli):
    assert cli("prove", "-", stdin="# a comment\n\np -> p\n")[0] == 0


def test_output_is_deterministic(cli):
    for argv in (("reduce", "p \\/ q -> q \\/ p", "--to", "automaton"), ("prove", "~~p -> p", "--refute")):
        assert cli(*argv) == cli(*argv)


def test_pipe_coherence(cli):
    for f in corpus.exhaustive(5):
        text = print_formula(f)
        code, _, _ = cli("prove", text)
        _, psi, _ = cli("reduce", text, "--to", "iipc3")
        assert cli("prove", psi.strip(), "--fragment", "iipc")[0] == code
        _, automaton, _ = cli("reduce", text, "--to", "automaton")
        assert cli("automaton", "run", "-", stdin=automaton)[0] == code
