"""Monotonic automata: alternating machines over write-once registers.

A configuration is a state together with the set of registers raised so
far.  ``q: check S1 set S2 goto p`` moves to ``p`` once every register of
``S1`` is raised, raising those of ``S2``; ``q: split p1 p2`` continues in
both ``p1`` and ``p2``, and both branches must accept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from ._deep import run_deep

__all__ = [
    "CheckSet",
    "Split",
    "Instruction",
    "Configuration",
    "MonotonicAutomaton",
    "WitnessTree",
    "Acceptance",
    "AutomatonSyntaxError",
    "step",
    "accepts",
    "is_nondeterministic",
    "validate",
    "check_witness",
    "parse_automaton",
    "parse_configuration",
    "format_automaton",
    "format_witness",
]


@dataclass(frozen=True)
class CheckSet:
    at: str
    check: frozenset[str]
    set: frozenset[str]
    goto: str


@dataclass(frozen=True)
class Split:
    at: str
    left: str
    right: str


Instruction = Union[CheckSet, Split]


@dataclass(frozen=True)
class Configuration:
    state: str
    store: frozenset[str] = frozenset()


@dataclass(frozen=True)
class MonotonicAutomaton:
    states: tuple[str, ...]
    registers: tuple[str, ...]
    final: str
    instructions: tuple[Instruction, ...]
    # free-form lines emitted as comments by format_automaton
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "registers", tuple(self.registers))
        object.__setattr__(self, "instructions", tuple(self.instructions))
        object.__setattr__(self, "notes", tuple(self.notes))


@dataclass(frozen=True)
class WitnessTree:
    config: Configuration
    instruction: Optional[Instruction]
    children: tuple["WitnessTree", ...] = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)


@dataclass
class Acceptance:
    accepting: bool
    witness: Optional[WitnessTree] = None
    visited: int = 0

    def __bool__(self) -> bool:
        return self.accepting


def step(a: MonotonicAutomaton, c: Configuration, i: Instruction) -> list[Configuration]:
    """Successor configurations of ``c`` under ``i``; empty if inapplicable."""
    if i.at != c.state:
        return []
    if isinstance(i, Split):
        return [Configuration(i.left, c.store), Configuration(i.right, c.store)]
    if not i.check <= c.store:
        return []
    return [Configuration(i.goto, c.store | i.set)]


def is_nondeterministic(a: MonotonicAutomaton) -> bool:
    """True when there is no universal branching."""
    return not any(isinstance(i, Split) for i in a.instructions)


def validate(a: MonotonicAutomaton, init: Optional[Configuration] = None) -> list[str]:
    defects: list[str] = []
    states, registers = set(a.states), set(a.registers)
    for name in sorted({s for s in a.states if a.states.count(s) > 1}):
        defects.append(f"state {name} declared twice")
    for name in sorted({r for r in a.registers if a.registers.count(r) > 1}):
        defects.append(f"register {name} declared twice")
    for name in sorted(states & registers):
        defects.append(f"identifier {name} is both a state and a register")
    if a.final not in states:
        defects.append(f"final state undeclared: {a.final}")
    for n, i in enumerate(a.instructions, 1):
        where = f"instruction {n} ({format_instruction(i)})"
        named = [i.at, i.left, i.right] if isinstance(i, Split) else [i.at, i.goto]
        for s in named:
            if s not in states:
                defects.append(f"{where}: unknown state {s}")
        if isinstance(i, CheckSet):
            for r in sorted((i.check | i.set) - registers):
                defects.append(f"{where}: unknown register {r}")
    if init is not None:
        if init.state not in states:
            defects.append(f"initial configuration: unknown state {init.state}")
        for r in sorted(init.store - registers):
            defects.append(f"initial configuration: unknown register {r}")
    return defects


class _Compiled:
    """Bitmask view of an automaton."""

    def __init__(self, a: MonotonicAutomaton):
        self.a = a
        self.bit = {r: 1 << k for k, r in enumerate(dict.fromkeys(a.registers))}
        self.by_state: dict[str, list[tuple]] = {}
        for i in a.instructions:
            if isinstance(i, Split):
                entry = ("split", i.left, i.right, i)
            else:
                entry = ("check", self.mask(i.check), self.mask(i.set), i.goto, i)
            self.by_state.setdefault(i.at, []).append(entry)
        self.relevant = self._relevant_registers()

    def mask(self, regs: Iterable[str]) -> int:
        m = 0
        for r in regs:
            m |= self.bit[r]
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(r for r, b in self.bit.items() if m & b)

    def _relevant_registers(self) -> dict[str, int]:
        """Registers any instruction reachable from each state may check.
        Acceptance of ``(q, S)`` depends on ``S`` only through this set,
        because stores never shrink."""
        succ: dict[str, set[str]] = {}
        own: dict[str, int] = {}
        for q, entries in self.by_state.items():
            for e in entries:
                if e[0] == "split":
                    succ.setdefault(q, set()).update((e[1], e[2]))
                else:
                    succ.setdefault(q, set()).add(e[3])
                    own[q] = own.get(q, 0) | e[1]
        states = set(self.a.states) | set(succ) | {t for ts in succ.values() for t in ts}
        rel = {q: own.get(q, 0) for q in states}
        changed = True
        while changed:
            changed = False
            for q, ts in succ.items():
                m = rel[q]
                for t in ts:
                    m |= rel[t]
                if m != rel[q]:
                    rel[q] = m
                    changed = True
        return rel


class _Acceptor:
    def __init__(self, comp: _Compiled):
        self.c = comp
        self.final = comp.a.final
        # key -> (entry used, stamp); stamps strictly increase with proof order
        self.proved: dict[tuple[str, int], tuple[Optional[tuple], int]] = {}
        self.refuted: set[tuple[str, int]] = set()
        self.on_path: dict[tuple[str, int], int] = {}
        self.stamp = 0
        self.visited = 0

    def key(self, q: str, s: int) -> tuple[str, int]:
        return (q, s & self.c.relevant.get(q, 0))

    def solve(self, q: str, s: int, depth: int) -> float:
        """``_OK`` when accepting; otherwise the lowest on-path depth hit by
        pruning, or infinity when the failure is path-independent."""
        k = self.key(q, s)
        if k in self.proved:
            return _OK
        if k in self.refuted:
            return _INF
        seen = self.on_path.get(k)
        if seen is not None:
            return seen
        self.visited += 1
        if q == self.final:
            self.record(k, None)
            return _OK
        self.on_path[k] = depth
        low = _INF
        try:
            for e in self.c.by_state.get(q, ()):
                if e[0] == "check":
                    if e[1] & ~s:
                        continue
                    r = self.solve(e[3], s | e[2], depth + 1)
                else:
                    r = self.solve(e[1], s, depth + 1)
                    if r == _OK:
                        r = self.solve(e[2], s, depth + 1)
                if r == _OK:
                    self.record(k, e)
                    return _OK
                low = min(low, r)
        finally:
            del self.on_path[k]
        if low >= depth:
            self.refuted.add(k)
            return _INF
        return low

    def record(self, k, e) -> None:
        self.stamp += 1
        self.proved[k] = (e, self.stamp)

    def witness(self, q: str, s: int) -> WitnessTree:
        e, _ = self.proved[self.key(q, s)]
        config = Configuration(q, self.c.unmask(s))
        if e is None:
            return WitnessTree(config, None)
        if e[0] == "check":
            return WitnessTree(config, e[4], (self.witness(e[3], s | e[2]),))
        return WitnessTree(config, e[3], (self.witness(e[1], s), self.witness(e[2], s)))


_INF = float("inf")
_OK = -1


def accepts(a: MonotonicAutomaton, c: Configuration, witness: bool = False) -> Acceptance:
    """Decide whether ``c`` is accepting.  With ``witness=True`` an accepting
    computation tree is returned as well, checked against :func:`step`."""
    comp = _Compiled(a)
    acc = _Acceptor(comp)
    s = comp.mask(c.store)

    def run():
        ok = acc.solve(c.state, s, 0) == _OK
        tree = acc.witness(c.state, s) if ok and witness else None
        return ok, tree

    ok, tree = run_deep(run)
    if tree is not None:
        problems = check_witness(a, tree)
        if problems:
            raise AssertionError(f"internal error, invalid witness: {problems[0]}")
    return Acceptance(ok, tree, acc.visited)


def check_witness(a: MonotonicAutomaton, tree: WitnessTree) -> list[str]:
    """Independent check of a witness tree: leaves are final, every edge is
    a transition, stores grow and no configuration repeats on a path."""
    problems: list[str] = []
    stack: list[tuple[WitnessTree, frozenset]] = [(tree, frozenset())]
    while stack:
        node, above = stack.pop()
        c = node.config
        if c in above:
            problems.append(f"configuration repeated on a path: {c.state}")
        if node.instruction is None:
            if node.children or c.state != a.final:
                problems.append(f"leaf {c.state} is not final")
            continue
        if node.instruction not in a.instructions:
            problems.append(f"unknown instruction at {c.state}")
        expected = step(a, c, node.instruction)
        if not expected or [ch.config for ch in node.children] != expected:
            problems.append(f"bad transition at {c.state}")
        for ch in node.children:
            if not c.store <= ch.config.store:
                problems.append(f"store shrinks below {c.state}")
            stack.append((ch, above | {c}))
    return problems


# -- text format ---------------------------------------------------------------


class AutomatonSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


_SET = r"\{([^}]*)\}"
_CHECK = re.compile(rf"^(\S+):\s*check\s*{_SET}\s*set\s*{_SET}\s*goto\s+(\S+)$")
_SPLIT = re.compile(r"^(\S+):\s*split\s+(\S+)\s+(\S+)$")
_INIT = re.compile(rf"^init:\s*([^\s{{}}]+)\s*(?:{_SET})?$")


def _names(body: str) -> frozenset[str]:
    return frozenset(x for x in re.split(r"[\s,]+", body.strip()) if x)


def parse_configuration(text: str) -> Configuration:
    """``state {r1, r2}`` (the braces may be omitted for an empty store)."""
    m = _INIT.match("init: " + text.strip())
    if not m:
        raise AutomatonSyntaxError(f"malformed configuration {text!r}", 0)
    return Configuration(m.group(1), _names(m.group(2) or ""))


def parse_automaton(text: str) -> tuple[MonotonicAutomaton, Optional[Configuration]]:
    states: list[str] = []
    registers: list[str] = []
    final: Optional[str] = None
    init: Optional[Configuration] = None
    instructions: list[Instruction] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        if head == "states":
            states.extend(rest.split())
        elif head == "registers":
            registers.extend(rest.split())
        elif head == "final":
            parts = rest.split()
            if len(parts) != 1:
                raise AutomatonSyntaxError("expected exactly one final state", n)
            final = parts[0]
        elif head == "init":
            m = _INIT.match(line)
            if not m:
                raise AutomatonSyntaxError("malformed init line", n)
            init = Configuration(m.group(1), _names(m.group(2) or ""))
        elif m := _CHECK.match(line):
            instructions.append(CheckSet(m.group(1), _names(m.group(2)), _names(m.group(3)), m.group(4)))
        elif m := _SPLIT.match(line):
            instructions.append(Split(m.group(1), m.group(2), m.group(3)))
        else:
            raise AutomatonSyntaxError(f"cannot parse {line!r}", n)
    if final is None:
        raise AutomatonSyntaxError("missing 'final:' line", 0)
    return MonotonicAutomaton(tuple(states), tuple(registers), final, tuple(instructions)), init


def _fmt_set(regs: Iterable[str], order: dict[str, int]) -> str:
    return "{" + ", ".join(sorted(regs, key=lambda r: (order.get(r, len(order)), r))) + "}"


def format_instruction(i: Instruction, order: Optional[dict[str, int]] = None) -> str:
    order = order or {}
    if isinstance(i, Split):
        return f"{i.at}: split {i.left} {i.right}"
    return f"{i.at}: check {_fmt_set(i.check, order)} set {_fmt_set(i.set, order)} goto {i.goto}"


def format_automaton(a: MonotonicAutomaton, init: Optional[Configuration] = None) -> str:
    order = {r: k for k, r in enumerate(a.registers)}
    lines = [f"# {note}" for note in a.notes]
    lines.append("states: " + " ".join(a.states))
    lines.append("registers: " + " ".join(a.registers))
    lines.append(f"final: {a.final}")
    if init is not None:
        lines.append(f"init: {init.state} {_fmt_set(init.store, order)}")
    lines.extend(format_instruction(i, order) for i in a.instructions)
    return "\n".join(lines) + "\n"


def format_witness(tree: WitnessTree, a: MonotonicAutomaton) -> str:
    order = {r: k for k, r in enumerate(a.registers)}
    lines: list[str] = []

    def go(node: WitnessTree, indent: int) -> None:
        c = node.config
        how = "final" if node.instruction is None else format_instruction(node.instruction, order)
        lines.append(f"{'  ' * indent}<{c.state}, {_fmt_set(c.store, order)}>  by {how}")
        for ch in node.children:
            go(ch, indent + 1)

    run_deep(go, tree, 0)
    return "\n".join(lines) + "\n"
