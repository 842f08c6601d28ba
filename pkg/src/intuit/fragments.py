"""Syntactic fragments: the order-three-minus hierarchy and order two plus.

The hierarchy splits atoms into data and control atoms::

    T1 ::= X1 | X0 -> T1
    T2 ::= X1 | X0 -> T2 | T1 -> T1
    T3 ::= X1 | T2 -> T3 | X0 -> T3

Formulas do not come with a partition, so one is inferred: targets are
forced into X1, argument positions reserved for X0 are forced into X0, and
a T2 formula whose arguments are all atoms may use at most one of them as
its T1 (control) argument.  Unconstrained atoms default to data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formula import FALSUM, Formula, Impl, Var, arguments, atoms, is_implicational, order, target

__all__ = ["FragmentClass", "classify", "infer_partition", "is_literal", "literal_order", "in_order_two_plus"]


@dataclass(frozen=True)
class FragmentClass:
    is_implicational: bool
    order: Optional[int]
    in_T1m: bool
    in_T2m: bool
    in_T3m: bool
    data_atoms: Optional[frozenset[str]]
    control_atoms: Optional[frozenset[str]]
    in_order_two_plus: bool


class _Constraints:
    def __init__(self) -> None:
        self.data: set[str] = set()
        self.control: set[str] = set()
        self.at_most_one: list[list[str]] = []
        self.ok = True

    def solve(self, all_atoms: set[str]) -> Optional[tuple[frozenset[str], frozenset[str]]]:
        if not self.ok or self.data & self.control:
            return None
        for group in self.at_most_one:
            if sum(1 for a in set(group) if a in self.control) > 1:
                return None
        return frozenset(all_atoms - self.control), frozenset(self.control)


def _name(f: Formula) -> str:
    assert isinstance(f, Var)
    return f.name


def _t1(f: Formula, c: _Constraints) -> None:
    for a in arguments(f):
        if not isinstance(a, Var):
            c.ok = False
            return
        c.data.add(a.name)
    c.control.add(_name(target(f)))


def _t2(f: Formula, c: _Constraints) -> None:
    args = arguments(f)
    compound = [a for a in args if not isinstance(a, Var)]
    if len(compound) > 1:
        c.ok = False
        return
    names = [a.name for a in args if isinstance(a, Var)]
    if compound:
        _t1(compound[0], c)
        c.data.update(names)
    else:
        c.at_most_one.append(names)
    c.control.add(_name(target(f)))


def _t3(f: Formula, c: _Constraints) -> None:
    for a in arguments(f):
        if not isinstance(a, Var):
            _t2(a, c)
    c.control.add(_name(target(f)))


_LEVELS = {1: _t1, 2: _t2, 3: _t3}


def infer_partition(f: Formula, level: int = 3) -> Optional[tuple[frozenset[str], frozenset[str]]]:
    """``(data, control)`` atoms witnessing membership of ``f`` in the
    level-``level`` fragment, or None if no partition works."""
    if not is_implicational(f) or order(f) > level:
        return None
    c = _Constraints()
    _LEVELS[level](f, c)
    return c.solve(set(atoms(f)))


def is_literal(f: Formula) -> bool:
    return isinstance(f, Var) or f is FALSUM or (isinstance(f, Impl) and isinstance(f.left, Var) and f.right is FALSUM)


def literal_order(f: Formula) -> Optional[int]:
    """Order counting literals as order 0; None outside the literal language."""
    if is_literal(f):
        return 0
    if not isinstance(f, Impl):
        return None
    left, right = literal_order(f.left), literal_order(f.right)
    if left is None or right is None:
        return None
    return max(right, left + 1)


def in_order_two_plus(f: Formula) -> bool:
    r = literal_order(f)
    return r is not None and r <= 2


def classify(f: Formula) -> FragmentClass:
    imp = is_implicational(f)
    t3 = infer_partition(f, 3) if imp else None
    return FragmentClass(
        is_implicational=imp,
        order=order(f) if imp else None,
        in_T1m=imp and infer_partition(f, 1) is not None,
        in_T2m=imp and infer_partition(f, 2) is not None,
        in_T3m=t3 is not None,
        data_atoms=t3[0] if t3 else None,
        control_atoms=t3[1] if t3 else None,
        in_order_two_plus=in_order_two_plus(f),
    )
