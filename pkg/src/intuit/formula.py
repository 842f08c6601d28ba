"""Propositional formulas of intuitionistic logic.

Formulas are hash-consed: constructing the same formula twice yields the
same object, so equality is identity and every formula carries a small
integer ``uid`` usable as a memo key.
"""

from __future__ import annotations

import itertools
import threading
from functools import lru_cache
from typing import Iterable, Iterator

__all__ = [
    "Formula",
    "Var",
    "Falsum",
    "Impl",
    "Conj",
    "Disj",
    "FALSUM",
    "neg",
    "implies",
    "is_atom",
    "is_implicational",
    "atoms",
    "size",
    "length",
    "order",
    "target",
    "arguments",
    "targets",
    "traces",
    "elimination_paths",
    "trace_paths",
    "subformulas",
    "subformula_list",
    "substitute",
    "phi_k",
    "print_formula",
]

_table: dict[tuple, "Formula"] = {}
_lock = threading.Lock()
_uids = itertools.count()


class Formula:
    __slots__ = ("uid", "__weakref__")
    __match_args__: tuple[str, ...] = ()

    @classmethod
    def _intern(cls, key: tuple, init) -> "Formula":
        f = _table.get(key)
        if f is not None:
            return f
        with _lock:
            f = _table.get(key)
            if f is None:
                f = object.__new__(cls)
                init(f)
                object.__setattr__(f, "uid", next(_uids))
                _table[key] = f
        return f

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __hash__(self) -> int:
        return self.uid

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other: "Formula") -> bool:
        return self.uid < other.uid

    def __repr__(self) -> str:
        return f"<{print_formula(self)}>"

    def __str__(self) -> str:
        return print_formula(self)

    def __reduce__(self):
        if isinstance(self, Var):
            return (Var, (self.name,))
        if isinstance(self, Falsum):
            return (Falsum, ())
        return (type(self), (self.left, self.right))


class Var(Formula):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __new__(cls, name: str) -> "Var":
        if not isinstance(name, str) or not name:
            raise ValueError(f"bad variable name {name!r}")

        def init(f):
            object.__setattr__(f, "name", name)

        return cls._intern(("var", name), init)


class Falsum(Formula):
    __slots__ = ()

    def __new__(cls) -> "Falsum":
        return cls._intern(("false",), lambda f: None)


class _Binary(Formula):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")
    _tag = ""

    def __new__(cls, left: Formula, right: Formula):
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise TypeError("formula operands must be formulas")

        def init(f):
            object.__setattr__(f, "left", left)
            object.__setattr__(f, "right", right)

        return cls._intern((cls._tag, left.uid, right.uid), init)


class Impl(_Binary):
    __slots__ = ()
    _tag = "->"


class Conj(_Binary):
    __slots__ = ()
    _tag = "/\\"


class Disj(_Binary):
    __slots__ = ()
    _tag = "\\/"


FALSUM = Falsum()


def neg(f: Formula) -> Formula:
    return Impl(f, FALSUM)


def implies(premises: Iterable[Formula], conclusion: Formula) -> Formula:
    """Build ``p1 -> ... -> pn -> conclusion``."""
    result = conclusion
    for p in reversed(list(premises)):
        result = Impl(p, result)
    return result


def is_atom(f: Formula) -> bool:
    return isinstance(f, (Var, Falsum))


@lru_cache(maxsize=None)
def is_implicational(f: Formula) -> bool:
    """True for formulas built from variables and implication only."""
    if isinstance(f, Var):
        return True
    if isinstance(f, Impl):
        return is_implicational(f.left) and is_implicational(f.right)
    return False


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, _Binary):
            stack.append(g.right)
            stack.append(g.left)


def atoms(f: Formula) -> list[str]:
    """Variable names of ``f`` in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in _walk(f):
        if isinstance(g, Var):
            seen.setdefault(g.name)
    return list(seen)


def size(f: Formula) -> int:
    """Number of syntax-tree nodes."""
    return sum(1 for _ in _walk(f))


def length(f: Formula) -> int:
    """Number of atom occurrences (variables and falsum)."""
    return sum(1 for g in _walk(f) if is_atom(g))


@lru_cache(maxsize=None)
def _order(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    return max(_order(f.right), _order(f.left) + 1)


def order(f: Formula) -> int:
    """Order of an implicational formula: atoms 0, ``a -> b`` is
    ``max(order(b), order(a) + 1)``."""
    if not is_implicational(f):
        raise ValueError(f"order is defined for implicational formulas only: {f}")
    return _order(f)


def arguments(f: Formula) -> list[Formula]:
    args = []
    while isinstance(f, Impl):
        args.append(f.left)
        f = f.right
    return args


@lru_cache(maxsize=None)
def target(f: Formula) -> Formula:
    """Head of the rightmost implication chain."""
    while isinstance(f, Impl):
        f = f.right
    return f


@lru_cache(maxsize=None)
def targets(f: Formula) -> tuple[Formula, ...]:
    """Atoms and disjunctions reachable by eliminations, in discovery order."""
    if is_atom(f) or isinstance(f, Disj):
        return (f,)
    if isinstance(f, Impl):
        return targets(f.right)
    assert isinstance(f, Conj)
    out = list(targets(f.left))
    out.extend(t for t in targets(f.right) if t not in out)
    return tuple(out)


# An elimination path is a tuple of steps, each either ("app", formula) or
# ("proj", 1|2), leading from a hypothesis of type f to one of its targets.
Step = tuple


@lru_cache(maxsize=None)
def elimination_paths(alpha: Formula, f: Formula) -> tuple[tuple[Step, ...], ...]:
    if alpha not in targets(f):
        return ()
    if f is alpha:
        return ((),)
    if isinstance(f, Impl):
        return tuple((("app", f.left),) + p for p in elimination_paths(alpha, f.right))
    if isinstance(f, Conj):
        left = tuple((("proj", 1),) + p for p in elimination_paths(alpha, f.left))
        right = tuple((("proj", 2),) + p for p in elimination_paths(alpha, f.right))
        return left + right
    return ()


@lru_cache(maxsize=None)
def traces(alpha: Formula, f: Formula) -> tuple[frozenset[Formula], ...]:
    """Argument sets collected along the ways of eliminating ``f`` down to
    ``alpha``; duplicates removed, generation order kept."""
    out: list[frozenset[Formula]] = []
    for path in elimination_paths(alpha, f):
        t = frozenset(s[1] for s in path if s[0] == "app")
        if t not in out:
            out.append(t)
    return tuple(out)


@lru_cache(maxsize=None)
def trace_paths(alpha: Formula, f: Formula) -> tuple[tuple[Step, ...], ...]:
    """One elimination path per trace, aligned with :func:`traces`."""
    chosen: dict[frozenset[Formula], tuple[Step, ...]] = {}
    for path in elimination_paths(alpha, f):
        chosen.setdefault(frozenset(s[1] for s in path if s[0] == "app"), path)
    return tuple(chosen[t] for t in traces(alpha, f))


@lru_cache(maxsize=None)
def subformula_list(f: Formula) -> tuple[Formula, ...]:
    """All distinct subformulas, children before parents."""
    seen: dict[Formula, None] = {}

    def visit(g: Formula) -> None:
        if g in seen:
            return
        if isinstance(g, _Binary):
            visit(g.left)
            visit(g.right)
        seen[g] = None

    visit(f)
    return tuple(seen)


def subformulas(f: Formula) -> frozenset[Formula]:
    return frozenset(subformula_list(f))


def substitute(f: Formula, p: str, g: Formula) -> Formula:
    """Replace every occurrence of variable ``p`` in ``f`` by ``g``."""
    if isinstance(f, Var):
        return g if f.name == p else f
    if isinstance(f, Falsum):
        return f
    return type(f)(substitute(f.left, p, g), substitute(f.right, p, g))


def phi_k(k: int) -> Formula:
    """``p1`` for k = 1, then ``phi_k(k-1) -> pk``."""
    if k < 1:
        raise ValueError("phi_k needs k >= 1")
    f: Formula = Var("p1")
    for i in range(2, k + 1):
        f = Impl(f, Var(f"p{i}"))
    return f


# Precedence levels for printing: higher binds tighter.
_IMPL, _DISJ, _CONJ, _UNIT = 1, 2, 3, 4


def print_formula(f: Formula, ascii: bool = True) -> str:
    """Render with minimal parentheses: ``->`` right-associative and loosest,
    then ``\\/``, then ``/\\`` (both left-associative); ``x -> false`` is
    printed as ``~x``."""
    arrow, vee, wedge, tilde, bot = (
        (" -> ", " \\/ ", " /\\ ", "~", "false") if ascii else (" → ", " ∨ ", " ∧ ", "¬", "⊥")
    )

    def go(g: Formula, ctx: int) -> str:
        if isinstance(g, Var):
            return g.name
        if isinstance(g, Falsum):
            return bot
        if isinstance(g, Impl) and g.right is FALSUM:
            return tilde + go(g.left, _UNIT)
        if isinstance(g, Impl):
            s = go(g.left, _IMPL + 1) + arrow + go(g.right, _IMPL)
            level = _IMPL
        elif isinstance(g, Disj):
            s = go(g.left, _DISJ) + vee + go(g.right, _DISJ + 1)
            level = _DISJ
        else:
            s = go(g.left, _CONJ) + wedge + go(g.right, _CONJ + 1)
            level = _CONJ
        return s if level >= ctx else f"({s})"

    return go(f, _IMPL)
