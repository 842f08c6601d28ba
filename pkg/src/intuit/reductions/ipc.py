"""Proof search as an automaton, and automata back to implicational logic."""

from __future__ import annotations

import re

from ..automata import CheckSet, Configuration, Instruction, MonotonicAutomaton, Split
from ..formula import FALSUM, Conj, Disj, Formula, Impl, Var, implies, is_atom, print_formula, subformula_list, targets, trace_paths
from ..terms import Context

__all__ = ["ipc_to_automaton", "automaton_to_formula", "ipc_to_iipc3", "FINAL"]

FINAL = "fin"


def ipc_to_automaton(phi: Formula) -> tuple[MonotonicAutomaton, Configuration]:
    """Automaton whose configuration ``<state(psi), registers(Gamma)>`` is
    accepting iff ``Gamma |- psi``, for subformulas of ``phi``.

    Subformula number ``k`` (children before parents) is state ``q<k>`` and
    register ``r<k>``; the returned configuration is ``<state(phi), {}>``.
    """
    subs = subformula_list(phi)
    idx = {f: k for k, f in enumerate(subs)}

    def st(f: Formula) -> str:
        return f"q{idx[f]}"

    def reg(f: Formula) -> str:
        return f"r{idx[f]}"

    states = [st(f) for f in subs]
    instructions: list[Instruction] = []

    def chain(at: str, psi: Formula, goals: list[str], prefix: str) -> None:
        """``at: check {psi} goto`` a universal split over ``goals``."""
        if not goals:
            instructions.append(CheckSet(at, frozenset([reg(psi)]), frozenset(), FINAL))
            return
        if len(goals) == 1:
            instructions.append(CheckSet(at, frozenset([reg(psi)]), frozenset(), goals[0]))
            return
        links = [f"{prefix}_c{j}" for j in range(1, len(goals))]
        states.extend(links)
        instructions.append(CheckSet(at, frozenset([reg(psi)]), frozenset(), links[0]))
        for j, link in enumerate(links):
            right = links[j + 1] if j + 1 < len(links) else goals[-1]
            instructions.append(Split(link, goals[j], right))

    for phi_ in subs:
        k = idx[phi_]
        here = st(phi_)
        if isinstance(phi_, Conj):
            instructions.append(Split(here, st(phi_.left), st(phi_.right)))
            continue
        if isinstance(phi_, Impl):
            instructions.append(CheckSet(here, frozenset(), frozenset([reg(phi_.left)]), st(phi_.right)))
            continue
        if isinstance(phi_, Disj):
            instructions.append(CheckSet(here, frozenset(), frozenset(), st(phi_.left)))
            instructions.append(CheckSet(here, frozenset(), frozenset(), st(phi_.right)))
        seen: set[tuple] = set()
        for psi in subs:
            m = idx[psi]
            for alpha in targets(psi):
                elim_disj = isinstance(alpha, Disj)
                if not (alpha is phi_ and is_atom(phi_) or alpha is FALSUM or elim_disj):
                    continue
                for t, path in enumerate(trace_paths(alpha, psi)):
                    rhos = list(dict.fromkeys(s[1] for s in path if s[0] == "app"))
                    sig = (psi, alpha, frozenset(rhos))
                    if sig in seen:
                        continue
                    seen.add(sig)
                    prefix = f"x{k}_{m}_{idx[alpha]}_{t}"
                    goals = [st(r) for r in rhos]
                    if elim_disj:
                        s1, s2 = f"{prefix}_s1", f"{prefix}_s2"
                        states.extend((s1, s2))
                        goals += [s1, s2]
                        chain(here, psi, goals, prefix)
                        instructions.append(CheckSet(s1, frozenset(), frozenset([reg(alpha.left)]), here))
                        instructions.append(CheckSet(s2, frozenset(), frozenset([reg(alpha.right)]), here))
                    else:
                        chain(here, psi, goals, prefix)
    states.append(FINAL)
    notes = [f"{st(f)} / {reg(f)} = {print_formula(f)}" for f in subs]
    a = MonotonicAutomaton(tuple(states), tuple(reg(f) for f in subs), FINAL, tuple(instructions), tuple(notes))
    return a, Configuration(st(phi), frozenset())


_IDENT = re.compile(r"^[a-zA-Z][a-zA-Z0-9_']*$")
_RESERVED = {"false", "case", "of", "in1", "in2", "absurd"}


def _atom_names(a: MonotonicAutomaton) -> dict[tuple[str, str], str]:
    """Atom for every state and register: registers get a prefix when
    the two name spaces overlap, and names that are not identifiers are
    replaced by fresh ones."""
    overlap = bool(set(a.states) & set(a.registers))
    taken: set[str] = set()
    out: dict[tuple[str, str], str] = {}

    def fresh(base: str) -> str:
        name, n = base, 0
        while name in taken or name in _RESERVED:
            n += 1
            name = f"{base}_{n}"
        taken.add(name)
        return name

    items = [("s", q) for q in dict.fromkeys(a.states)] + [("r", r) for r in dict.fromkeys(a.registers)]
    for kind, name in items:
        base = name
        if kind == "r" and overlap:
            base = f"reg_{name}"
        if not _IDENT.match(base):
            base = re.sub(r"[^a-zA-Z0-9_']", "_", base)
            if not base[:1].isalpha():
                base = "id_" + base
        out[(kind, name)] = fresh(base)
    return out


def automaton_to_formula(a: MonotonicAutomaton, c0: Configuration) -> tuple[Context, Formula]:
    """``(Gamma, q0)`` with ``Gamma |- q0`` iff ``c0`` is accepting.

    Gamma holds the initial registers, the final state and one axiom per
    instruction, each of order at most two.
    """
    names = _atom_names(a)

    def sv(q: str) -> Formula:
        return Var(names[("s", q)])

    def rv(r: str) -> Formula:
        return Var(names[("r", r)])

    reg_order = {r: k for k, r in enumerate(a.registers)}

    def regs(s: frozenset[str]) -> list[Formula]:
        return [rv(r) for r in sorted(s, key=lambda r: (reg_order.get(r, 0), r))]

    items: list[tuple[str, Formula]] = []
    for r in regs(c0.store):
        items.append((f"init_{r.name}", r))
    items.append(("final", sv(a.final)))
    for n, i in enumerate(a.instructions, 1):
        if isinstance(i, Split):
            ax = Impl(sv(i.left), Impl(sv(i.right), sv(i.at)))
        else:
            ax = implies(regs(i.check), Impl(implies(regs(i.set), sv(i.goto)), sv(i.at)))
        items.append((f"ax{n}", ax))
    return Context(items), sv(c0.state)


def ipc_to_iipc3(phi: Formula) -> Formula:
    """An implicational formula of order at most three, provable iff ``phi`` is."""
    a, c0 = ipc_to_automaton(phi)
    ctx, goal = automaton_to_formula(a, c0)
    return implies(ctx.formulas(), goal)
