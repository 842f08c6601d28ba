"""Kripke models: forcing, small countermodel search, and depth-two
countermodels for the order-two-plus fragment."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Union

from .formula import FALSUM, Conj, Disj, Falsum, Formula, Impl, Var, arguments, atoms, subformula_list, target
from .fragments import in_order_two_plus
from .terms import Context

__all__ = [
    "KripkeModel",
    "forces",
    "refutes",
    "countermodel_search",
    "countermodel_2plus",
    "format_model",
    "parse_model",
    "rooted_frames",
]


@dataclass(frozen=True)
class KripkeModel:
    """Finite poset of states with a monotone valuation.  ``order`` is
    stored as its reflexive-transitive closure."""

    states: tuple[str, ...]
    order: frozenset[tuple[str, str]]
    valuation: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        states = tuple(self.states)
        if not states or len(set(states)) != len(states):
            raise ValueError("states must be nonempty and distinct")
        names = set(states)
        rel = {(c, c) for c in states}
        for a, b in self.order:
            if a not in names or b not in names:
                raise ValueError(f"order mentions an unknown state: {a} <= {b}")
            rel.add((a, b))
        changed = True
        while changed:
            extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
            rel |= extra
            changed = bool(extra)
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValueError(f"order is not antisymmetric: {a}, {b}")
        val = {c: frozenset(self.valuation.get(c, ())) for c in states}
        for c in self.valuation:
            if c not in names:
                raise ValueError(f"valuation mentions an unknown state: {c}")
        for a, b in rel:
            missing = val[a] - val[b]
            if missing:
                raise ValueError(f"valuation is not monotone: {a} <= {b} but {b} lacks {sorted(missing)}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "order", frozenset(rel))
        object.__setattr__(self, "valuation", val)

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def above(self, c: str) -> list[str]:
        return [d for d in self.states if (c, d) in self.order]

    def depth(self) -> int:
        """Number of states on a longest chain."""
        memo: dict[str, int] = {}

        def go(c: str) -> int:
            if c not in memo:
                memo[c] = 1 + max((go(d) for d in self.above(c) if d != c), default=0)
            return memo[c]

        return max(go(c) for c in self.states)

    def is_maximal(self, c: str) -> bool:
        return self.above(c) == [c]

    def __hash__(self) -> int:
        return hash((self.states, self.order, tuple(sorted(self.valuation.items()))))


# -- forcing -----------------------------------------------------------------------


def _masks(fs: Iterable[Formula], up: list[int], val: Mapping[str, int], full: int) -> dict[Formula, int]:
    """Set of forcing states, as a bitmask, for every subformula."""
    out: dict[Formula, int] = {}
    n = len(up)
    for f in fs:
        for g in subformula_list(f):
            if g in out:
                continue
            if isinstance(g, Var):
                m = val.get(g.name, 0)
            elif isinstance(g, Falsum):
                m = 0
            elif isinstance(g, Conj):
                m = out[g.left] & out[g.right]
            elif isinstance(g, Disj):
                m = out[g.left] | out[g.right]
            else:
                bad = out[g.left] & ~out[g.right] & full
                m = 0
                for c in range(n):
                    if not up[c] & bad:
                        m |= 1 << c
            out[g] = m
    return out


def _encode(m: KripkeModel) -> tuple[dict[str, int], list[int], dict[str, int]]:
    index = {c: k for k, c in enumerate(m.states)}
    up = [sum(1 << index[d] for d in m.above(c)) for c in m.states]
    val: dict[str, int] = {}
    for c, ps in m.valuation.items():
        for p in ps:
            val[p] = val.get(p, 0) | 1 << index[c]
    return index, up, val


def forces(m: KripkeModel, c: str, f: Formula) -> bool:
    index, up, val = _encode(m)
    if c not in index:
        raise ValueError(f"unknown state {c}")
    return bool(_masks([f], up, val, (1 << len(up)) - 1)[f] >> index[c] & 1)


def refutes(m: KripkeModel, c: str, ctx: Union[Context, Iterable[Formula], None], goal: Formula) -> bool:
    """``c`` forces every formula of ``ctx`` but not ``goal``."""
    fs = _formulas(ctx)
    return all(forces(m, c, f) for f in fs) and not forces(m, c, goal)


def _formulas(ctx: Union[Context, Iterable[Formula], None]) -> list[Formula]:
    if ctx is None:
        return []
    if isinstance(ctx, Context):
        return ctx.formulas()
    return list(ctx)


# -- exhaustive search -------------------------------------------------------------


@lru_cache(maxsize=None)
def rooted_frames(n: int) -> tuple[tuple[int, ...], ...]:
    """Rooted posets on ``n`` states up to isomorphism, as up-set bitmasks.

    State 0 is the root; the other states are labelled along a linear
    extension, so only pairs ``i < j`` need to be tried.  Each class is
    represented by its lexicographically least relation under relabelling.
    """
    if n == 1:
        return ((1,),)
    rest = list(range(1, n))
    pairs = [(i, j) for i in rest for j in rest if i < j]
    seen: dict[tuple, tuple[int, ...]] = {}
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        key = min(
            tuple(sorted((perm[a - 1], perm[b - 1]) for a, b in rel))
            for perm in itertools.permutations(range(1, n))
        )
        if key in seen:
            continue
        up = [(1 << n) - 1] + [1 << c | sum(1 << b for a, b in key if a == c) for c in rest]
        seen[key] = tuple(up)
    return tuple(seen[k] for k in sorted(seen, key=lambda k: (len(k), k)))


def _up_sets(up: tuple[int, ...]) -> list[int]:
    n = len(up)
    return [m for m in range(1 << n) if all(up[c] & ~m == 0 for c in range(n) if m >> c & 1)]


def _model(up: tuple[int, ...], val: Mapping[str, int]) -> KripkeModel:
    n = len(up)
    names = [f"c{k}" for k in range(n)]
    order = {(names[a], names[b]) for a in range(n) for b in range(n) if up[a] >> b & 1}
    valuation = {names[c]: frozenset(p for p, m in val.items() if m >> c & 1) for c in range(n)}
    return KripkeModel(tuple(names), frozenset(order), valuation)


def _candidates(names: list[str], max_states: int) -> Iterator[tuple[tuple[int, ...], dict[str, int]]]:
    for n in range(1, max_states + 1):
        for up in rooted_frames(n):
            ups = _up_sets(up)
            for choice in itertools.product(ups, repeat=len(names)):
                yield up, dict(zip(names, choice))


def countermodel_search(
    ctx: Union[Context, Iterable[Formula], None], goal: Formula, max_states: int
) -> Optional[tuple[KripkeModel, str]]:
    """First model, by state count, frame and valuation, whose root forces
    ``ctx`` but not ``goal``.  Incomplete at any fixed bound."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    fs = _formulas(ctx)
    names = list(dict.fromkeys(p for f in [*fs, goal] for p in atoms(f)))
    for up, val in _candidates(names, max_states):
        full = (1 << len(up)) - 1
        masks = _masks([*fs, goal], list(up), val, full)
        if masks[goal] & 1 or not all(masks[f] & 1 for f in fs):
            continue
        m = _model(up, val)
        assert refutes(m, "c0", fs, goal)
        return m, "c0"
    return None


# -- order two plus ----------------------------------------------------------------


def _clause(xi: Formula) -> tuple[list[str], list[str], bool, Optional[str]]:
    """``(positive, negated, has_falsum_premise, target)`` of an argument."""
    pos, negs, falsum = [], [], False
    for lit in arguments(xi):
        if isinstance(lit, Var):
            pos.append(lit.name)
        elif lit is FALSUM:
            falsum = True
        elif isinstance(lit, Impl) and isinstance(lit.left, Var) and lit.right is FALSUM:
            negs.append(lit.left.name)
        else:
            raise ValueError(f"premise {lit} is not a literal")
    t = target(xi)
    return pos, negs, falsum, t.name if isinstance(t, Var) else None


def countermodel_2plus(f: Formula) -> Optional[tuple[KripkeModel, str]]:
    """A refuting model of depth at most two, with a root ``c0`` and at most
    one maximal state per argument of ``f``; None when ``f`` is provable."""
    if not in_order_two_plus(f):
        raise ValueError(f"not in the order-two-plus fragment: {f}")
    clauses = [_clause(xi) for xi in arguments(f)]
    goal = target(f)
    names = atoms(f)

    def classical(world: frozenset[str]) -> bool:
        for pos, negs, falsum, t in clauses:
            if falsum or not all(p in world for p in pos) or any(p in world for p in negs):
                continue
            if t is None or t not in world:
                return False
        return True

    def subsets(base: frozenset[str]) -> Iterator[frozenset[str]]:
        free = [p for p in names if p not in base]
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                yield base | frozenset(extra)

    for v0 in subsets(frozenset()):
        if isinstance(goal, Var) and goal.name in v0:
            continue
        finals: list[frozenset[str]] = []
        ok = True
        for pos, negs, falsum, t in clauses:
            needy = (
                not falsum
                and all(p in v0 for p in pos)
                and not any(p in v0 for p in negs)
                and (t is None or t not in v0)
            )
            if not needy:
                continue
            w = next((w for w in subsets(v0) if w & set(negs) and classical(w)), None)
            if w is None:
                ok = False
                break
            if w not in finals:
                finals.append(w)
        if not ok or (not finals and not classical(v0)):
            continue
        states = ("c0",) + tuple(f"c{k}" for k in range(1, len(finals) + 1))
        order = frozenset(("c0", c) for c in states[1:])
        valuation = {"c0": v0, **{c: w for c, w in zip(states[1:], finals)}}
        m = KripkeModel(states, order, valuation)
        assert refutes(m, "c0", [], f)
        return m, "c0"
    return None


# -- text format -------------------------------------------------------------------


def format_model(m: KripkeModel, root: Optional[str] = None) -> str:
    """``state c``, ``c <= d`` (covering pairs) and ``c ||- p`` lines."""
    lines = [f"state {c}" for c in m.states]
    for a in m.states:
        for b in m.states:
            if a != b and m.leq(a, b):
                between = any(x not in (a, b) and m.leq(a, x) and m.leq(x, b) for x in m.states)
                if not between:
                    lines.append(f"{a} <= {b}")
    for c in m.states:
        for p in sorted(m.valuation[c]):
            lines.append(f"{c} ||- {p}")
    if root is not None:
        lines.append(f"root {root}")
    return "\n".join(lines)


def parse_model(text: str) -> tuple[KripkeModel, Optional[str]]:
    states: list[str] = []
    order: set[tuple[str, str]] = set()
    val: dict[str, set[str]] = {}
    root = None
    for raw in text.replace(";", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 2 and parts[0] == "state":
            states.append(parts[1])
        elif len(parts) == 2 and parts[0] == "root":
            root = parts[1]
        elif len(parts) == 3 and parts[1] == "<=":
            order.add((parts[0], parts[2]))
        elif len(parts) == 3 and parts[1] == "||-":
            val.setdefault(parts[0], set()).add(parts[2])
        else:
            raise ValueError(f"cannot parse model line {line!r}")
    valuation = {c: frozenset(ps) for c, ps in val.items()}
    return KripkeModel(tuple(states), frozenset(order), valuation), root
