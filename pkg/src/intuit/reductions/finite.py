"""Finite automata as monotonic automata that record their run in registers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..automata import CheckSet, Configuration, MonotonicAutomaton

__all__ = ["FiniteAutomaton", "nfa_to_automaton"]


@dataclass(frozen=True)
class FiniteAutomaton:
    """States ``0..k``; 0 is initial and ``k`` final.  ``delta`` maps
    ``(state, symbol)`` to the set of possible next states."""

    k: int
    delta: Mapping[tuple[int, str], Iterable[int]]

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("a finite automaton needs at least one state")
        frozen = {key: frozenset(v) for key, v in dict(self.delta).items()}
        for (i, _), targets in frozen.items():
            if not 0 <= i <= self.k or any(not 0 <= j <= self.k for j in targets):
                raise ValueError(f"transition mentions a state outside 0..{self.k}")
        object.__setattr__(self, "delta", frozen)

    def run(self, word: Sequence[str]) -> bool:
        current = {0}
        for a in word:
            current = {j for i in current for j in self.delta.get((i, a), ())}
        return self.k in current


def nfa_to_automaton(fa: FiniteAutomaton, word: Sequence[str]) -> tuple[MonotonicAutomaton, Configuration]:
    n = len(word)
    states = [f"q{t}" for t in range(n + 1)] + ["f"]
    registers = [f"r{t}_{i}" for t in range(n + 1) for i in range(fa.k + 1)]
    instructions = []
    for t, a in enumerate(word):
        for i in range(fa.k + 1):
            for j in sorted(fa.delta.get((i, a), ())):
                instructions.append(
                    CheckSet(f"q{t}", frozenset([f"r{t}_{i}"]), frozenset([f"r{t + 1}_{j}"]), f"q{t + 1}")
                )
    instructions.append(CheckSet(f"q{n}", frozenset([f"r{n}_{fa.k}"]), frozenset(), "f"))
    a = MonotonicAutomaton(tuple(states), tuple(registers), "f", tuple(instructions))
    return a, Configuration("q0", frozenset(["r0_0"]))
