import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intuit.automata import (
    AutomatonSyntaxError,
    CheckSet,
    Configuration,
    MonotonicAutomaton,
    Split,
    WitnessTree,
    accepts,
    check_witness,
    format_automaton,
    format_witness,
    is_nondeterministic,
    parse_automaton,
    parse_configuration,
    step,
    validate,
)

from oracles import lfp_accepting, random_automaton, random_configuration

F = frozenset


def _auto(instructions, states=("q", "p", "p1", "p2", "f"), regs=("r0", "r1")):
    return MonotonicAutomaton(states, regs, "f", tuple(instructions))


def test_step():
    i = CheckSet("q", F({"r0"}), F({"r1"}), "p")
    a = _auto([i])
    assert step(a, Configuration("q", F({"r0"})), i) == [Configuration("p", F({"r0", "r1"}))]
    assert step(a, Configuration("q", F()), i) == []
    sp = Split("q", "p1", "p2")
    s = F({"r0"})
    assert step(a, Configuration("q", s), sp) == [Configuration("p1", s), Configuration("p2", s)]
    assert step(a, Configuration("p", s), sp) == []


def test_acceptance_basics():
    a = _auto([])
    assert accepts(a, Configuration("f", F({"r1"})))
    assert not accepts(a, Configuration("q"))


def test_split_is_universal():
    a = _auto([Split("q", "p1", "p2"), CheckSet("p1", F(), F(), "f")])
    assert not accepts(a, Configuration("q"))
    a = _auto([*a.instructions, CheckSet("p2", F({"r0"}), F(), "f")])
    assert not accepts(a, Configuration("q"))
    assert accepts(a, Configuration("q", F({"r0"})))


def test_cycles_do_not_loop():
    a = _auto([CheckSet("q", F(), F(), "p"), CheckSet("p", F(), F(), "q"), CheckSet("p", F(), F({"r1"}), "p1"),
               CheckSet("p1", F({"r1"}), F(), "f")])
    r = accepts(a, Configuration("q"), witness=True)
    assert r.accepting and not check_witness(a, r.witness)


def test_nondeterminism_flag():
    assert is_nondeterministic(_auto([]))
    assert is_nondeterministic(_auto([CheckSet("q", F(), F(), "f")]))
    assert not is_nondeterministic(_auto([Split("q", "f", "f")]))


def test_validate():
    assert validate(_auto([CheckSet("q", F({"r0"}), F(), "f")])) == []
    defects = validate(_auto([CheckSet("q", F(), F(), "nowhere")]))
    assert len(defects) == 1 and "nowhere" in defects[0] and "instruction 1" in defects[0]
    bad = MonotonicAutomaton(("q",), ("q",), "f", ())
    defects = validate(bad)
    assert "final state undeclared: f" in defects
    assert any("both a state and a register" in d for d in defects)
    assert validate(_auto([]), Configuration("zz", F({"r9"}))) == [
        "initial configuration: unknown state zz",
        "initial configuration: unknown register r9",
    ]


def test_check_witness_catches_tampering():
    a = _auto([CheckSet("q", F(), F({"r0"}), "f")])
    good = accepts(a, Configuration("q"), witness=True).witness
    assert check_witness(a, good) == []
    leaf = WitnessTree(Configuration("f", F()), None)
    forged = WitnessTree(Configuration("q", F()), a.instructions[0], (leaf,))
    assert check_witness(a, forged)
    assert check_witness(a, WitnessTree(Configuration("q", F()), None))


TEXT = """\
# a tiny automaton
states: q0 q1 f
registers: r0 r1
final: f
init: q0 {r0}
q0: check {r0} set {r1} goto q1
q1: split f f
"""


def test_text_format_round_trip():
    a, init = parse_automaton(TEXT)
    assert init == Configuration("q0", F({"r0"}))
    assert a.instructions[0] == CheckSet("q0", F({"r0"}), F({"r1"}), "q1")
    assert parse_automaton(format_automaton(a, init)) == (a, init)
    assert parse_configuration("q1") == Configuration("q1")
    assert parse_configuration("q1 {r0, r1}") == Configuration("q1", F({"r0", "r1"}))
    r = accepts(a, init, witness=True)
    assert format_witness(r.witness, a).splitlines()[0] == "<q0, {r0}>  by q0: check {r0} set {r1} goto q1"


@pytest.mark.parametrize("text", ["states: q\nq: jump\nfinal: q", "states: q", "final: a b", "final: f\ninit: {r}"])
def test_syntax_errors(text):
    with pytest.raises(AutomatonSyntaxError):
        parse_automaton(text)


# -- properties against the least-fixed-point oracle -----------------------------------


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_acceptance_matches_least_fixed_point(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, max_states=5, max_registers=5)
    good = lfp_accepting(a)
    for _ in range(6):
        c = random_configuration(rng, a)
        r = accepts(a, c, witness=True)
        assert r.accepting == ((c.state, c.store) in good)
        if r.accepting:
            assert check_witness(a, r.witness) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_acceptance_is_monotone_in_the_store(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, max_states=4, max_registers=4)
    c = random_configuration(rng, a)
    if accepts(a, c):
        bigger = Configuration(c.state, c.store | {r for r in a.registers if rng.random() < 0.5})
        assert accepts(a, bigger)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_witness_stores_grow_along_paths(seed):
    rng = random.Random(seed)
    a = random_automaton(rng)
    r = accepts(a, random_configuration(rng, a), witness=True)
    if r.accepting:
        stack = [r.witness]
        while stack:
            node = stack.pop()
            for ch in node.children:
                assert node.config.store <= ch.config.store
                stack.append(ch)
