"""Classical normalization of implicational formulas to order at most three."""

from __future__ import annotations

import itertools

from ..formula import FALSUM, Conj, Disj, Falsum, Formula, Impl, Var, arguments, atoms, implies, target

__all__ = ["classical_order3", "cnf_clauses", "truth_value", "classically_equivalent"]

Clause = list[tuple[str, bool]]


def _or(xs: list[Clause], ys: list[Clause]) -> list[Clause]:
    # X \/ (Y /\ Z) = (X \/ Y) /\ (X \/ Z)
    return [x + y for x in xs for y in ys]


def _cnf(f: Formula, positive: bool) -> list[Clause]:
    """Clauses of ``f`` (or of its negation); ``[]`` is true, ``[[]]`` false."""
    if isinstance(f, Var):
        return [[(f.name, positive)]]
    if isinstance(f, Falsum):
        return [[]] if positive else []
    if isinstance(f, Conj):
        if positive:
            return _cnf(f.left, True) + _cnf(f.right, True)
        return _or(_cnf(f.left, False), _cnf(f.right, False))
    if isinstance(f, Disj):
        if positive:
            return _or(_cnf(f.left, True), _cnf(f.right, True))
        return _cnf(f.left, False) + _cnf(f.right, False)
    assert isinstance(f, Impl)
    if positive:
        return _or(_cnf(f.right, True), _cnf(f.left, False))
    return _cnf(f.left, True) + _cnf(f.right, False)


def cnf_clauses(fs: list[Formula]) -> list[Clause]:
    """CNF of the conjunction of ``fs`` by naive distribution, with repeated
    literals merged and tautological clauses dropped."""
    out: list[Clause] = []
    for f in fs:
        for clause in _cnf(f, True):
            lits = list(dict.fromkeys(clause))
            if any((v, not pol) in lits for v, pol in lits):
                continue
            out.append(lits)
    return out


def classical_order3(phi: Formula) -> Formula:
    """A formula of order at most three, classically equivalent to ``phi``.

    ``phi`` must have a variable target ``p``; its arguments are put in CNF
    and every clause is turned into an order-two formula: with a positive
    literal ``s`` (the first one) the clause becomes
    ``q1 -> ... -> (r1 -> p) -> ... -> s`` for the negative literals ``qi``
    and other positive ones ``ri``; an all-negative clause becomes
    ``q1 -> ... -> p``.
    """
    p = target(phi)
    if not isinstance(p, Var):
        raise ValueError(f"the target of {phi} must be a variable")
    parts: list[Formula] = []
    for clause in cnf_clauses(arguments(phi)):
        negatives = [Var(v) for v, pol in clause if not pol]
        positives = [Var(v) for v, pol in clause if pol]
        if positives:
            s, rest = positives[0], positives[1:]
            parts.append(implies(negatives + [Impl(r, p) for r in rest], s))
        else:
            parts.append(implies(negatives, p))
    return implies(parts, p)


def truth_value(f: Formula, valuation: dict[str, bool]) -> bool:
    if isinstance(f, Var):
        return valuation[f.name]
    if f is FALSUM:
        return False
    if isinstance(f, Impl):
        return not truth_value(f.left, valuation) or truth_value(f.right, valuation)
    if isinstance(f, Conj):
        return truth_value(f.left, valuation) and truth_value(f.right, valuation)
    assert isinstance(f, Disj)
    return truth_value(f.left, valuation) or truth_value(f.right, valuation)


def classically_equivalent(f: Formula, g: Formula) -> bool:
    names = list(dict.fromkeys(atoms(f) + atoms(g)))
    for bits in itertools.product((False, True), repeat=len(names)):
        v = dict(zip(names, bits))
        if truth_value(f, v) != truth_value(g, v):
            return False
    return True
