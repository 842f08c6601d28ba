"""3-CNF instances and their encodings into the NP and coNP fragments."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..formula import FALSUM, Formula, Impl, Var, implies, neg
from ..terms import Context

__all__ = [
    "Literal",
    "Cnf3",
    "DimacsError",
    "parse_dimacs",
    "satisfiable",
    "cnf_to_np_formula",
    "np_axioms",
    "cnf_to_conp_context",
]

Literal = tuple[str, bool]  # (variable, polarity)


@dataclass(frozen=True)
class Cnf3:
    variables: tuple[str, ...]
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise ValueError("duplicate variable")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for v, pol in c:
                if v not in declared:
                    raise ValueError(f"undeclared variable {v}")
                if not isinstance(pol, bool):
                    raise ValueError(f"polarity of {v} must be a bool")

    def evaluate(self, valuation: dict[str, bool]) -> bool:
        return all(any(valuation[v] == pol for v, pol in c) for c in self.clauses)


class DimacsError(ValueError):
    pass


def parse_dimacs(text: str, pad: bool = False) -> Cnf3:
    """Read DIMACS CNF; variable ``k`` becomes ``p<k>``.  Clauses must have
    exactly three literals unless ``pad`` is set, in which case shorter
    clauses repeat their last literal."""
    nvars = None
    numbers: list[int] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {n}: malformed problem line")
            try:
                nvars = int(parts[2])
            except ValueError:
                raise DimacsError(f"line {n}: malformed problem line") from None
            continue
        try:
            numbers.extend(int(x) for x in line.split())
        except ValueError:
            raise DimacsError(f"line {n}: expected integers") from None
    if nvars is None:
        raise DimacsError("missing 'p cnf' line")
    clauses, current = [], []
    for x in numbers:
        if x == 0:
            clauses.append(current)
            current = []
        else:
            if abs(x) > nvars:
                raise DimacsError(f"literal {x} exceeds the declared {nvars} variables")
            current.append((f"p{abs(x)}", x > 0))
    if current:
        clauses.append(current)
    out = []
    for k, c in enumerate(clauses, 1):
        if pad and 0 < len(c) < 3:
            c = c + [c[-1]] * (3 - len(c))
        if len(c) != 3:
            raise DimacsError(f"clause {k} has {len(c)} literals, expected 3")
        out.append(tuple(c))
    return Cnf3(tuple(f"p{k}" for k in range(1, nvars + 1)), tuple(out))


def satisfiable(psi: Cnf3) -> bool:
    """Truth-table satisfiability."""
    for bits in itertools.product((False, True), repeat=len(psi.variables)):
        if psi.evaluate(dict(zip(psi.variables, bits))):
            return True
    return False


def _require_nonempty(psi: Cnf3) -> None:
    if not psi.variables or not psi.clauses:
        raise ValueError("the encodings need at least one variable and one clause")


def _primed(v: str) -> str:
    return v + "'"


def np_axioms(psi: Cnf3) -> list[Formula]:
    """The axioms Gamma of the NP encoding, in order."""
    _require_nonempty(psi)
    n, k = len(psi.variables), len(psi.clauses)
    reserved = {f"q{i}" for i in range(1, n + 1)} | {f"c{j}" for j in range(1, k + 2)}
    clash = reserved & ({*psi.variables} | {_primed(v) for v in psi.variables})
    if clash:
        raise ValueError(f"variable names clash with encoding atoms: {sorted(clash)}")

    def q(i: int) -> Formula:
        return Var(f"q{i}")

    def c(j: int) -> Formula:
        return Var(f"c{j}")

    def rho(lit: Literal) -> Formula:
        v, pol = lit
        return Var(v if pol else _primed(v))

    out: list[Formula] = []
    for i, v in enumerate(psi.variables, 1):
        nxt = q(i + 1) if i < n else c(1)
        out.append(Impl(Impl(Var(v), nxt), q(i)))
        out.append(Impl(Impl(Var(_primed(v)), nxt), q(i)))
    for j, clause in enumerate(psi.clauses, 1):
        for lit in clause:
            out.append(Impl(rho(lit), Impl(c(j + 1), c(j))) if j < k else Impl(rho(lit), c(j)))
    return out


def cnf_to_np_formula(psi: Cnf3) -> Formula:
    """Order-three-minus formula provable iff ``psi`` is satisfiable."""
    return implies(np_axioms(psi), Var("q1"))


def cnf_to_conp_context(psi: Cnf3) -> tuple[Context, Formula]:
    """``(Gamma, false)`` with ``Gamma |- false`` iff ``psi`` is unsatisfiable."""
    _require_nonempty(psi)
    items: list[tuple[str, Formula]] = []
    for i, v in enumerate(psi.variables, 1):
        items.append((f"X{i}", implies([neg(Var(v)), neg(Var(_primed(v)))], FALSUM)))
    for j, clause in enumerate(psi.clauses, 1):
        flipped = [Var(_primed(v) if pol else v) for v, pol in clause]
        items.append((f"Y{j}", implies(flipped, FALSUM)))
    return Context(items), FALSUM


def clause_text(clause: Sequence[Literal]) -> str:
    return " \\/ ".join(v if pol else f"~{v}" for v, pol in clause)
