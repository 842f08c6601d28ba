import itertools
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intuit.automata import CheckSet, Configuration, Split, accepts, validate
from intuit.formula import FALSUM, Disj, Impl, Var, atoms, is_implicational, order, phi_k, subformula_list
from intuit.fragments import classify, in_order_two_plus
from intuit.parsing import parse_formula
from intuit.prover import prove, prove_iipc
from intuit.reductions.classical import classical_order3, classically_equivalent, cnf_clauses
from intuit.reductions.cnf import (
    Cnf3,
    DimacsError,
    cnf_to_conp_context,
    cnf_to_np_formula,
    np_axioms,
    parse_dimacs,
    satisfiable,
)
from intuit.reductions.finite import FiniteAutomaton, nfa_to_automaton
from intuit.reductions.ipc import automaton_to_formula, ipc_to_automaton, ipc_to_iipc3
from intuit.reductions.lba import LbaSyntaxError, default_pn, lba_to_automaton, parse_lba, simulate
from intuit.kripke import countermodel_2plus

from oracles import random_automaton, random_configuration
from strategies import formulas, implicational

P = parse_formula
DATA = Path(__file__).parent / "data"


# -- IPC to automaton -------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [("p -> p", True), ("((p -> q) -> p) -> p", False), ("p \\/ q -> q \\/ p", True), ("p /\\ q -> q /\\ p", True)],
)
def test_ipc_automaton_examples(text, expected):
    a, c = ipc_to_automaton(P(text))
    assert validate(a, c) == []
    assert accepts(a, c).accepting is expected
    psi = ipc_to_iipc3(P(text))
    assert is_implicational(psi) and order(psi) <= 3
    assert prove_iipc(None, psi).provable is expected


def test_disjunction_elimination_expansion():
    # psi = a -> b \/ c eliminated towards the atom goal q: one check, a
    # split into the three subgoals a, s1, s2 (two links), and the two
    # instructions that add b and c
    phi = P("(a -> b \\/ c) -> q")
    a, _ = ipc_to_automaton(phi)
    idx = {f: k for k, f in enumerate(subformula_list(phi))}
    psi = P("a -> b \\/ c")
    start = [
        i for i in a.instructions
        if i.at == f"q{idx[Var('q')]}" and isinstance(i, CheckSet) and i.check == {f"r{idx[psi]}"}
    ]
    assert len(start) == 1
    block, frontier = [start[0]], [start[0]]
    own = {f"q{k}" for k in idx.values()}
    while frontier:
        i = frontier.pop()
        nexts = [i.left, i.right] if isinstance(i, Split) else [i.goto]
        for s in nexts:
            if s in own or s == "fin":
                continue
            for j in a.instructions:
                if j.at == s and j not in block:
                    block.append(j)
                    frontier.append(j)
    assert len(block) == 5
    assert sum(isinstance(i, Split) for i in block) == 2
    sets = sorted(next(iter(i.set)) for i in block if isinstance(i, CheckSet) and i.set)
    assert sets == sorted([f"r{idx[Var('b')]}", f"r{idx[Var('c')]}"])


@settings(max_examples=150, deadline=None)
@given(formulas(max_leaves=6))
def test_ipc_reductions_preserve_provability(f):
    expected = prove(None, f).provable
    a, c = ipc_to_automaton(f)
    assert accepts(a, c).accepting is expected
    psi = ipc_to_iipc3(f)
    assert order(psi) <= 3
    assert prove_iipc(None, psi).provable is expected


@settings(max_examples=60, deadline=None)
@given(formulas(max_leaves=5), formulas(max_leaves=4))
def test_automaton_configurations_decide_subformula_judgements(goal, hyp):
    phi = Impl(hyp, goal)
    a, _ = ipc_to_automaton(phi)
    idx = {f: k for k, f in enumerate(subformula_list(phi))}
    c = Configuration(f"q{idx[goal]}", frozenset([f"r{idx[hyp]}"]))
    assert accepts(a, c).accepting is prove([hyp], goal).provable


# -- automaton to formula -------------------------------------------------------------


def test_axiom_shapes():
    from intuit.automata import MonotonicAutomaton

    F = frozenset
    a = MonotonicAutomaton(
        ("q", "p", "p1", "p2", "f"),
        ("s", "t"),
        "f",
        (CheckSet("q", F(), F(), "p"), Split("q", "p1", "p2"), CheckSet("q", F({"s"}), F({"t"}), "p")),
    )
    ctx, goal = automaton_to_formula(a, Configuration("q", F({"s"})))
    assert goal is Var("q")
    assert ctx["init_s"] is Var("s") and ctx["final"] is Var("f")
    assert ctx["ax1"] is P("p -> q")
    assert ctx["ax2"] is P("p1 -> p2 -> q")
    assert ctx["ax3"] is P("s -> (t -> p) -> q")


def test_state_register_overlap_is_renamed():
    from intuit.automata import MonotonicAutomaton

    F = frozenset
    a = MonotonicAutomaton(("x", "f"), ("x",), "f", (CheckSet("x", F({"x"}), F(), "f"),))
    ctx, goal = automaton_to_formula(a, Configuration("x", F({"x"})))
    assert goal is Var("x") and ctx["ax1"] is P("reg_x -> f -> x")
    assert prove(ctx, goal).provable


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_automaton_formula_agrees_with_acceptance(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, max_states=4, max_registers=4)
    c = random_configuration(rng, a)
    ctx, goal = automaton_to_formula(a, c)
    for f in ctx.formulas():
        assert order(f) <= 2
    assert goal in {Var(q) for q in a.states}
    assert prove_iipc(ctx, goal).provable is accepts(a, c).accepting


# -- finite automata ------------------------------------------------------------------


PARITY = FiniteAutomaton(1, {(0, "a"): {1}, (1, "a"): {0}})  # accepts odd lengths


def test_finite_automaton_examples():
    eps = FiniteAutomaton(0, {})
    a, c = nfa_to_automaton(eps, [])
    assert accepts(a, c)
    for word in ("a", "aa", "aaa"):
        a, c = nfa_to_automaton(PARITY, list(word))
        assert accepts(a, c).accepting is PARITY.run(word) is (len(word) % 2 == 1)
        assert validate(a, c) == []
    from intuit.automata import is_nondeterministic

    assert is_nondeterministic(nfa_to_automaton(PARITY, list("aa"))[0])
    with pytest.raises(ValueError):
        FiniteAutomaton(-1, {})


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_random_nfas(seed):
    rng = random.Random(seed)
    k = rng.randint(0, 3)
    delta = {
        (i, x): {j for j in range(k + 1) if rng.random() < 0.35} for i in range(k + 1) for x in "ab"
    }
    fa = FiniteAutomaton(k, delta)
    word = [rng.choice("ab") for _ in range(rng.randint(0, 5))]
    a, c = nfa_to_automaton(fa, word)
    assert accepts(a, c).accepting is fa.run(word)


# -- linear bounded automata ----------------------------------------------------------


def _lba(name):
    return parse_lba((DATA / f"{name}.lba").read_text())


def test_lba_parsing_and_defects():
    m = _lba("first_symbol")
    assert m.initial == "q0" and m.alphabet == ("a", "b")
    with pytest.raises(LbaSyntaxError):
        parse_lba("states: q\ninitial: q\n")
    with pytest.raises(LbaSyntaxError):
        parse_lba("states: q acc\ninitial: q\naccept: acc\nalphabet: a\nacc,a -> q,a,R\n")
    with pytest.raises(LbaSyntaxError):
        parse_lba("states: q\ninitial: q\naccept: q\nalphabet: a\nnonsense\n")


def test_lba_examples():
    a, c = lba_to_automaton(_lba("immediate"), ["b", "a"], 1)
    assert accepts(a, c)
    first = _lba("first_symbol")
    assert default_pn(first, 2) == 5
    assert accepts(*lba_to_automaton(first, ["a", "b"])).accepting
    assert not accepts(*lba_to_automaton(first, ["b", "b"])).accepting
    with pytest.raises(ValueError):
        lba_to_automaton(first, ["c"])
    with pytest.raises(ValueError):
        lba_to_automaton(first, [])


def test_lba_initial_store():
    first = _lba("first_symbol")
    a, c = lba_to_automaton(first, ["b", "a"], 2)
    assert c == Configuration("start", frozenset({"s_B_2_0", "c_B_2_1_1", "c_B_2_2_0", "h_B_2_1"}))
    assert validate(a, c) == []


@pytest.mark.parametrize("word", ["".join(w) for w in itertools.product("ab", repeat=2)])
def test_all_equal_length_two(word):
    m = _lba("all_equal")
    assert accepts(*lba_to_automaton(m, list(word), 3)).accepting is simulate(m, word, 8)


def test_step_bound_is_respected():
    # all_equal needs n + 2 steps, so aaa is out of reach of 2 ** 2 steps
    m = _lba("all_equal")
    assert simulate(m, "aaa", 5) and not simulate(m, "aaa", 4)
    assert not accepts(*lba_to_automaton(m, list("aaa"), 2)).accepting
    assert accepts(*lba_to_automaton(m, list("aaa"), 3)).accepting


# -- CNF encodings --------------------------------------------------------------------


def _cnf(*clauses, variables=None):
    names = variables or tuple(dict.fromkeys(v for c in clauses for v, _ in c))
    return Cnf3(names, clauses)


POS_P = (("p", True),) * 3
NEG_P = (("p", False),) * 3


def test_np_encoding_examples():
    psi = _cnf(POS_P)
    assert np_axioms(psi) == [P("(p -> c1) -> q1"), P("(p' -> c1) -> q1")] + [P("p -> c1")] * 3
    assert prove(None, cnf_to_np_formula(psi)).provable
    assert not prove(None, cnf_to_np_formula(_cnf(POS_P, NEG_P))).provable
    mixed = np_axioms(_cnf((("p", False), ("p", True), ("p", True))))
    assert mixed[2] is P("p' -> c1")
    c = classify(cnf_to_np_formula(_cnf(POS_P, NEG_P)))
    assert c.in_T3m and {"p", "p'"} <= c.data_atoms and {"q1", "c1", "c2"} <= c.control_atoms


def test_conp_encoding_examples():
    psi = _cnf((("p", True), ("q", False), ("s", False)))
    ctx, goal = cnf_to_conp_context(psi)
    assert goal is FALSUM
    assert ctx["Y1"] is P("p' -> q -> s -> false")
    assert ctx["X1"] is P("~p -> ~p' -> false")
    ctx, goal = cnf_to_conp_context(_cnf(POS_P, NEG_P))
    assert prove(ctx, goal).provable
    ctx, goal = cnf_to_conp_context(_cnf(POS_P))
    assert not prove(ctx, goal).provable
    assert countermodel_2plus(Impl(ctx.formulas()[0], Impl(ctx.formulas()[1], goal))) is not None
    assert all(in_order_two_plus(f) for f in ctx.formulas())


def test_encoders_need_nonempty_input():
    with pytest.raises(ValueError):
        cnf_to_np_formula(Cnf3(("p",), ()))
    with pytest.raises(ValueError):
        Cnf3(("p",), ((("p", True),),))
    with pytest.raises(ValueError):
        Cnf3(("p",), ((("x", True),) * 3,))
    with pytest.raises(ValueError):
        np_axioms(Cnf3(("q1",), ((("q1", True),) * 3,)))


def test_dimacs():
    text = "c example\np cnf 3 2\n1 -2 3 0\n-1 2\n -3 0\n"
    psi = parse_dimacs(text)
    assert psi.variables == ("p1", "p2", "p3")
    assert psi.clauses[1] == (("p1", False), ("p2", True), ("p3", False))
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 2 0\n")
    assert parse_dimacs("p cnf 2 1\n1 2 0\n", pad=True).clauses == ((("p1", True), ("p2", True), ("p2", True)),)
    with pytest.raises(DimacsError):
        parse_dimacs("1 2 3 0\n")
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 2 5 0\n")
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 1\n1 x 2 0\n")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_encodings_match_truth_tables(seed):
    rng = random.Random(seed)
    names = tuple(f"p{i}" for i in range(1, rng.randint(1, 3) + 1))
    clauses = tuple(
        tuple((rng.choice(names), rng.random() < 0.5) for _ in range(3)) for _ in range(rng.randint(1, 4))
    )
    psi = Cnf3(names, clauses)
    sat = satisfiable(psi)
    assert prove(None, cnf_to_np_formula(psi)).provable is sat
    ctx, goal = cnf_to_conp_context(psi)
    assert prove(ctx, goal).provable is (not sat)
    assert classify(cnf_to_np_formula(psi)).in_T3m


# -- classical normalization ----------------------------------------------------------


def test_classical_golden():
    assert str(classical_order3(phi_k(5))) == "(p1 -> (p2 -> p5) -> p4) -> (p3 -> p4) -> p5"
    out = classical_order3(P("(s \\/ q \\/ ~r) -> (~q \\/ ~r \\/ ~s) -> p"))
    assert out is P("(r -> (q -> p) -> s) -> (q -> r -> s -> p) -> p")
    assert classical_order3(Var("p")) is Var("p")
    with pytest.raises(ValueError):
        classical_order3(P("p -> false"))


def test_cnf_clauses_drop_tautologies_and_merge_literals():
    assert cnf_clauses([P("p -> p")]) == []
    assert cnf_clauses([P("p \\/ p")]) == [[("p", True)]]
    assert cnf_clauses([FALSUM]) == [[]]
    assert classical_order3(P("false -> p")) is P("p -> p")


@settings(max_examples=300, deadline=None)
@given(implicational(names=("p", "q", "r", "s"), max_leaves=5))
def test_classical_order3_is_equivalent(f):
    g = classical_order3(f)
    assert order(g) <= 3
    assert classically_equivalent(f, g)
