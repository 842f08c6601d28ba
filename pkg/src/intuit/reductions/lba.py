"""Linear bounded automata and their simulation by monotonic automata.

The monotonic automaton guesses an accepting final configuration, then
repeatedly guesses a midpoint of the computation and splits universally
into the two halves.  Configurations are written into registers
``s_X_d_q`` (state), ``c_X_d_i_a`` (cell ``i`` holds ``a``) and ``h_X_d_i``
(head at ``i``) for ``X`` in B (begin), H (half-way), E (end) and level
``d``.  At level 0 each branch checks that its end configuration equals
its begin configuration or follows from it in one step.

A move that would leave the tape keeps the head where it is.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from ..automata import CheckSet, Configuration, Instruction, MonotonicAutomaton, Split

__all__ = [
    "LbaDescription",
    "LbaSyntaxError",
    "parse_lba",
    "simulate",
    "default_pn",
    "lba_to_automaton",
]

_MOVES = {"L": -1, "R": 1, "S": 0}


@dataclass(frozen=True)
class LbaDescription:
    states: tuple[str, ...]
    initial: str
    accept: str
    alphabet: tuple[str, ...]
    # (state, symbol) -> set of (new state, written symbol, move)
    transitions: Mapping[tuple[str, str], frozenset[tuple[str, str, str]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        table = {k: frozenset(v) for k, v in dict(self.transitions).items()}
        object.__setattr__(self, "transitions", table)
        problems = self.defects()
        if problems:
            raise ValueError("; ".join(problems))

    def defects(self) -> list[str]:
        out = []
        states, symbols = set(self.states), set(self.alphabet)
        for name in (self.initial, self.accept):
            if name not in states:
                out.append(f"undeclared state {name}")
        for (q, a), moves in self.transitions.items():
            if q not in states or a not in symbols:
                out.append(f"transition from undeclared ({q}, {a})")
            if q == self.accept and moves:
                out.append("the accepting state has outgoing transitions")
            for q2, b, m in moves:
                if q2 not in states or b not in symbols or m not in _MOVES:
                    out.append(f"bad transition target ({q2}, {b}, {m})")
        return out

    def entries(self) -> list[tuple[str, str, str, str, str]]:
        """Transition entries ``(q, a, q', b, move)`` in a fixed order."""
        sidx = {q: k for k, q in enumerate(self.states)}
        aidx = {a: k for k, a in enumerate(self.alphabet)}
        out = [(q, a, *t) for (q, a), ts in self.transitions.items() for t in ts]
        return sorted(out, key=lambda e: (sidx[e[0]], aidx[e[1]], sidx[e[2]], aidx[e[3]], e[4]))


class LbaSyntaxError(ValueError):
    pass


_TRANSITION = re.compile(r"^(\S+?)\s*,\s*(\S+?)\s*->\s*(\S+?)\s*,\s*(\S+?)\s*,\s*([LRS])$")


def parse_lba(text: str) -> LbaDescription:
    fields: dict[str, list[str]] = {}
    table: dict[tuple[str, str], set] = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _TRANSITION.match(line)
        if m:
            q, a, q2, b, move = m.groups()
            table.setdefault((q, a), set()).add((q2, b, move))
            continue
        key, sep, rest = line.partition(":")
        if not sep or key not in ("states", "initial", "accept", "alphabet"):
            raise LbaSyntaxError(f"line {n}: cannot parse {line!r}")
        fields[key] = rest.split()
    for key in ("states", "initial", "accept", "alphabet"):
        if key not in fields:
            raise LbaSyntaxError(f"missing '{key}:' line")
    if len(fields["initial"]) != 1 or len(fields["accept"]) != 1:
        raise LbaSyntaxError("expected exactly one initial and one accepting state")
    try:
        return LbaDescription(
            tuple(fields["states"]), fields["initial"][0], fields["accept"][0], tuple(fields["alphabet"]), table
        )
    except ValueError as e:
        raise LbaSyntaxError(str(e)) from None


def _check_input(lba: LbaDescription, word: Sequence[str]) -> None:
    if not word:
        raise ValueError("input must be nonempty")
    for a in word:
        if a not in lba.alphabet:
            raise ValueError(f"input symbol {a!r} is not in the alphabet")


def _successors(lba: LbaDescription, conf: tuple[str, tuple[str, ...], int]):
    q, tape, head = conf
    n = len(tape)
    for q2, b, move in lba.transitions.get((q, tape[head - 1]), ()):
        new_tape = tape[: head - 1] + (b,) + tape[head:]
        yield q2, new_tape, min(n, max(1, head + _MOVES[move]))


def simulate(lba: LbaDescription, word: Sequence[str], max_steps: Optional[int] = None) -> bool:
    """Whether some run reaches the accepting state within ``max_steps``
    steps (unbounded when None)."""
    _check_input(lba, word)
    start = (lba.initial, tuple(word), 1)
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        conf, steps = frontier.popleft()
        if conf[0] == lba.accept:
            return True
        if max_steps is not None and steps >= max_steps:
            continue
        for nxt in _successors(lba, conf):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, steps + 1))
    return False


def default_pn(lba: LbaDescription, n: int) -> int:
    """``ceil(log2(|Q| * n * |Sigma|^n)) + 1``: enough levels for a run
    through every configuration."""
    count = len(lba.states) * n * len(lba.alphabet) ** n
    return math.ceil(math.log2(count)) + 1


def lba_to_automaton(
    lba: LbaDescription, word: Sequence[str], p_n: Optional[int] = None
) -> tuple[MonotonicAutomaton, Configuration]:
    """Monotonic automaton accepting from the returned configuration iff the
    machine accepts ``word`` within ``2 ** p_n`` steps."""
    _check_input(lba, word)
    n = len(word)
    P = default_pn(lba, n) if p_n is None else p_n
    if P < 1:
        raise ValueError("p_n must be at least 1")
    Q = range(len(lba.states))
    A = range(len(lba.alphabet))
    cells = range(1, n + 1)
    sidx = {q: k for k, q in enumerate(lba.states)}
    aidx = {a: k for k, a in enumerate(lba.alphabet)}

    def s(X: str, d: int, q: int) -> str:
        return f"s_{X}_{d}_{q}"

    def c(X: str, d: int, i: int, a: int) -> str:
        return f"c_{X}_{d}_{i}_{a}"

    def h(X: str, d: int, i: int) -> str:
        return f"h_{X}_{d}_{i}"

    registers = [
        reg
        for d in range(P, -1, -1)
        for X in "BHE"
        for reg in (
            [s(X, d, q) for q in Q] + [c(X, d, i, a) for i in cells for a in A] + [h(X, d, i) for i in cells]
        )
    ]
    states: list[str] = []
    instructions: list[Instruction] = []

    def state(name: str) -> str:
        states.append(name)
        return name

    def cs(at: str, check: Iterable[str], set_: Iterable[str], goto: str) -> None:
        instructions.append(CheckSet(at, frozenset(check), frozenset(set_), goto))

    def guess(prefix: str, X: str, d: int, qs: Iterable[int], first: str, last: str) -> None:
        """Nondeterministically raise an ``X,d``-code, from ``first`` to ``last``."""
        links = [first] + [state(f"{prefix}{i}") for i in range(1, n + 2)]
        for q in qs:
            cs(links[0], (), [s(X, d, q)], links[1])
        for i in cells:
            for a in A:
                cs(links[i], (), [c(X, d, i, a)], links[i + 1])
        for j in cells:
            cs(links[n + 1], (), [h(X, d, j)], last)

    def copy(prefix: str, X: str, d: int, Y: str, d2: int, first: str, last: str) -> None:
        """Copy the ``X,d``-code present in the store to ``Y,d2``."""
        links = [first] + [state(f"{prefix}{i}") for i in range(1, n + 2)]
        for q in Q:
            cs(links[0], [s(X, d, q)], [s(Y, d2, q)], links[1])
        for i in cells:
            for a in A:
                cs(links[i], [c(X, d, i, a)], [c(Y, d2, i, a)], links[i + 1])
        for j in cells:
            cs(links[n + 1], [h(X, d, j)], [h(Y, d2, j)], last)

    start = state("start")
    level = {d: state(f"Q{d}") for d in range(P, -1, -1)}
    guess("g", "E", P, [sidx[lba.accept]], start, level[P])

    for d in range(P, 0, -1):
        split = state(f"Q{d}_split")
        guess(f"Q{d}_h", "H", d, Q, level[d], split)
        left, right = state(f"Q{d}_B"), state(f"Q{d}_E")
        instructions.append(Split(split, left, right))
        mid_l, mid_r = state(f"Q{d}_BE"), state(f"Q{d}_EE")
        copy(f"Q{d}_B", "B", d, "B", d - 1, left, mid_l)
        copy(f"Q{d}_BE", "H", d, "E", d - 1, mid_l, level[d - 1])
        copy(f"Q{d}_E", "H", d, "B", d - 1, right, mid_r)
        copy(f"Q{d}_EE", "E", d, "E", d - 1, mid_r, level[d - 1])

    final = state("fin")
    q0 = level[0]

    # C^b = C^e
    same_c = [state(f"v_c{i}") for i in range(1, n + 2)]
    for q in Q:
        vs = state(f"v_s{q}")
        cs(q0, [s("B", 0, q)], (), vs)
        cs(vs, [s("E", 0, q)], (), same_c[0])
    for i in cells:
        for a in A:
            va = state(f"v_c{i}_{a}")
            cs(same_c[i - 1], [c("B", 0, i, a)], (), va)
            cs(va, [c("E", 0, i, a)], (), same_c[i])
    for j in cells:
        vh = state(f"v_h{j}")
        cs(same_c[n], [h("B", 0, j)], (), vh)
        cs(vh, [h("E", 0, j)], (), final)

    # C^e follows from C^b by one transition: check state, head and the
    # scanned cell together, then every other cell for equality
    for j in cells:
        others = [i for i in cells if i != j]
        links = [state(f"t{j}_{k}") for k in range(len(others) + 1)]
        for k, i in enumerate(others):
            for a in A:
                ta = state(f"t{j}_{k}_{a}")
                cs(links[k], [c("B", 0, i, a)], (), ta)
                cs(ta, [c("E", 0, i, a)], (), links[k + 1])
        instructions.append(CheckSet(links[-1], frozenset(), frozenset(), final))
        for q, a, q2, b, move in lba.entries():
            j2 = min(n, max(1, j + _MOVES[move]))
            check = [
                s("B", 0, sidx[q]),
                h("B", 0, j),
                c("B", 0, j, aidx[a]),
                s("E", 0, sidx[q2]),
                h("E", 0, j2),
                c("E", 0, j, aidx[b]),
            ]
            cs(q0, check, (), links[0])

    init = frozenset(
        [s("B", P, sidx[lba.initial])] + [c("B", P, i, aidx[x]) for i, x in zip(cells, word)] + [h("B", P, 1)]
    )
    notes = [f"state {k} = {q}" for k, q in enumerate(lba.states)]
    notes += [f"symbol {k} = {a}" for k, a in enumerate(lba.alphabet)]
    notes.append(f"levels p_n = {P}")
    a = MonotonicAutomaton(tuple(states), tuple(registers), final, tuple(instructions), tuple(notes))
    return a, Configuration(start, init)
