"""Proof terms for intuitionistic propositional logic.

Church-style terms: abstractions, case binders and falsum eliminations
carry their formulas.  Injections may carry the full disjunction they
inject into; without it their type can only be checked, not synthesized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from .formula import FALSUM, Conj, Disj, Falsum, Formula, Impl, Var as FVar, is_atom, print_formula

__all__ = [
    "Term",
    "Var",
    "Abs",
    "App",
    "Pair",
    "Proj",
    "Inj",
    "Case",
    "Absurd",
    "Context",
    "Judgement",
    "TypeCheckError",
    "typecheck",
    "check",
    "free_vars",
    "fresh_name",
    "subst_term",
    "rename",
    "term_size",
    "alpha_key",
    "alpha_equal",
    "reduce_step",
    "reduce_step_innermost",
    "normalize",
    "is_normal",
    "is_long_normal",
    "beta_eta_normal",
    "beta_eta_equal",
    "print_term",
]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Abs:
    name: str
    annotation: Formula
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Pair:
    first: "Term"
    second: "Term"


@dataclass(frozen=True)
class Proj:
    index: int  # 1 or 2
    of: "Term"


@dataclass(frozen=True)
class Inj:
    index: int  # 1 or 2
    of: "Term"
    disjunction: Optional[Formula] = None


@dataclass(frozen=True)
class Case:
    scrutinee: "Term"
    name1: str
    ann1: Formula
    branch1: "Term"
    name2: str
    ann2: Formula
    branch2: "Term"


@dataclass(frozen=True)
class Absurd:
    of: "Term"
    target: Formula


Term = Union[Var, Abs, App, Pair, Proj, Inj, Case, Absurd]
ELIMINATIONS = (App, Proj, Case, Absurd)


class TypeCheckError(Exception):
    """Raised for ill-typed terms; ``where`` is a path from the root."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{message} (at {where or 'root'})")


class Context:
    """Ordered map from proof-variable names to formulas."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[tuple[str, Formula]] = ()):
        d: dict[str, Formula] = {}
        for name, f in items:
            if name in d and d[name] is not f:
                raise ValueError(f"proof variable {name!r} already bound to {d[name]}")
            d[name] = f
        self._items = d

    def extend(self, name: str, f: Formula) -> "Context":
        return Context([*self._items.items(), (name, f)])

    def __getitem__(self, name: str) -> Formula:
        return self._items[name]

    def get(self, name: str) -> Optional[Formula]:
        return self._items.get(name)

    def __contains__(self, name: object) -> bool:
        return name in self._items

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def items(self):
        return self._items.items()

    def formulas(self) -> list[Formula]:
        return list(self._items.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, Context) and list(self._items.items()) == list(other._items.items())

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}: {print_formula(f)}" for n, f in self._items.items())
        return f"Context({inner})"


@dataclass(frozen=True)
class Judgement:
    context: Context
    goal: Formula
    subject: Optional[Term] = None

    def holds(self) -> bool:
        if self.subject is None:
            raise ValueError("judgement has no subject term")
        try:
            check(self.context, self.subject, self.goal)
        except TypeCheckError:
            return False
        return True


# --------------------------------------------------------------------------
# typing

Env = Mapping[str, Formula]


def _env(ctx: Union[Context, Env, None]) -> dict[str, Formula]:
    if ctx is None:
        return {}
    return dict(ctx.items())


def typecheck(ctx: Union[Context, Env, None], t: Term) -> Formula:
    """Synthesize the type of ``t`` from its annotations."""
    return _synth(_env(ctx), t, "")


def check(ctx: Union[Context, Env, None], t: Term, goal: Formula) -> None:
    """Check ``t`` against ``goal``; unannotated injections are accepted here."""
    _check(_env(ctx), t, goal, "")


def _synth(env: dict[str, Formula], t: Term, where: str) -> Formula:
    if isinstance(t, Var):
        f = env.get(t.name)
        if f is None:
            raise TypeCheckError(f"unbound proof variable {t.name}", where)
        return f
    if isinstance(t, Abs):
        body = _synth({**env, t.name: t.annotation}, t.body, where + "/body")
        return Impl(t.annotation, body)
    if isinstance(t, App):
        f = _synth(env, t.fun, where + "/fun")
        if not isinstance(f, Impl):
            raise TypeCheckError(f"(->E) applied a term of type {f}", where)
        _check(env, t.arg, f.left, where + "/arg")
        return f.right
    if isinstance(t, Pair):
        return Conj(_synth(env, t.first, where + "/1"), _synth(env, t.second, where + "/2"))
    if isinstance(t, Proj):
        f = _synth(env, t.of, where + "/of")
        if not isinstance(f, Conj):
            raise TypeCheckError(f"(/\\E{t.index}) on a term of type {f}", where)
        return f.left if t.index == 1 else f.right
    if isinstance(t, Inj):
        if t.disjunction is None:
            raise TypeCheckError(f"cannot synthesize the type of in{t.index} without annotation", where)
        _check_inj(env, t, t.disjunction, where)
        return t.disjunction
    if isinstance(t, Case):
        f = _synth(env, t.scrutinee, where + "/scrutinee")
        _expect_disj(f, t, where)
        r1 = _synth({**env, t.name1: t.ann1}, t.branch1, where + "/branch1")
        _check({**env, t.name2: t.ann2}, t.branch2, r1, where + "/branch2")
        return r1
    if isinstance(t, Absurd):
        _check(env, t.of, FALSUM, where + "/of")
        return t.target
    raise TypeError(f"not a term: {t!r}")


def _expect_disj(f: Formula, t: Case, where: str) -> None:
    if not isinstance(f, Disj):
        raise TypeCheckError(f"(\\/E) on a term of type {f}", where)
    if f.left is not t.ann1 or f.right is not t.ann2:
        raise TypeCheckError(
            f"(\\/E) binders {t.ann1}, {t.ann2} do not match scrutinee type {f}", where
        )


def _check_inj(env: dict[str, Formula], t: Inj, goal: Formula, where: str) -> None:
    if not isinstance(goal, Disj):
        raise TypeCheckError(f"(\\/I{t.index}) cannot have type {goal}", where)
    if t.disjunction is not None and t.disjunction is not goal:
        raise TypeCheckError(f"in{t.index} annotated {t.disjunction}, expected {goal}", where)
    _check(env, t.of, goal.left if t.index == 1 else goal.right, where + "/of")


def _check(env: dict[str, Formula], t: Term, goal: Formula, where: str) -> None:
    if isinstance(t, Inj):
        _check_inj(env, t, goal, where)
        return
    if isinstance(t, Abs) and isinstance(goal, Impl):
        if goal.left is not t.annotation:
            raise TypeCheckError(f"(->I) binder {t.annotation} but expected {goal}", where)
        _check({**env, t.name: t.annotation}, t.body, goal.right, where + "/body")
        return
    if isinstance(t, Pair) and isinstance(goal, Conj):
        _check(env, t.first, goal.left, where + "/1")
        _check(env, t.second, goal.right, where + "/2")
        return
    if isinstance(t, Case):
        f = _synth(env, t.scrutinee, where + "/scrutinee")
        _expect_disj(f, t, where)
        _check({**env, t.name1: t.ann1}, t.branch1, goal, where + "/branch1")
        _check({**env, t.name2: t.ann2}, t.branch2, goal, where + "/branch2")
        return
    f = _synth(env, t, where)
    if f is not goal:
        raise TypeCheckError(f"has type {f}, expected {goal}", where)


# --------------------------------------------------------------------------
# variables and substitution


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.name}
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Pair):
        return free_vars(t.first) | free_vars(t.second)
    if isinstance(t, (Proj, Inj, Absurd)):
        return free_vars(t.of)
    if isinstance(t, Case):
        return (
            free_vars(t.scrutinee)
            | (free_vars(t.branch1) - {t.name1})
            | (free_vars(t.branch2) - {t.name2})
        )
    raise TypeError(f"not a term: {t!r}")


def _all_names(t: Term) -> set[str]:
    out: set[str] = set()

    def go(u: Term) -> None:
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, Abs):
            out.add(u.name)
            go(u.body)
        elif isinstance(u, App):
            go(u.fun)
            go(u.arg)
        elif isinstance(u, Pair):
            go(u.first)
            go(u.second)
        elif isinstance(u, (Proj, Inj, Absurd)):
            go(u.of)
        elif isinstance(u, Case):
            out.update((u.name1, u.name2))
            go(u.scrutinee)
            go(u.branch1)
            go(u.branch2)

    go(t)
    return out


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += "'"
    return name


def subst_term(m: Term, x: str, n: Term) -> Term:
    """Capture-avoiding ``m[x := n]``."""
    return _subst(m, x, n, free_vars(n))


def _subst_binder(name: str, body: Term, x: str, n: Term, fv_n: frozenset[str]):
    """Substitute under one binder, renaming it when it would capture."""
    if name == x:
        return name, body
    if name in fv_n and x in free_vars(body):
        new = fresh_name(name, fv_n | free_vars(body) | {x})
        body = _subst(body, name, Var(new), frozenset((new,)))
        name = new
    return name, _subst(body, x, n, fv_n)


def _subst(m: Term, x: str, n: Term, fv_n: frozenset[str]) -> Term:
    if isinstance(m, Var):
        return n if m.name == x else m
    if isinstance(m, Abs):
        name, body = _subst_binder(m.name, m.body, x, n, fv_n)
        return Abs(name, m.annotation, body)
    if isinstance(m, App):
        return App(_subst(m.fun, x, n, fv_n), _subst(m.arg, x, n, fv_n))
    if isinstance(m, Pair):
        return Pair(_subst(m.first, x, n, fv_n), _subst(m.second, x, n, fv_n))
    if isinstance(m, Proj):
        return Proj(m.index, _subst(m.of, x, n, fv_n))
    if isinstance(m, Inj):
        return Inj(m.index, _subst(m.of, x, n, fv_n), m.disjunction)
    if isinstance(m, Absurd):
        return Absurd(_subst(m.of, x, n, fv_n), m.target)
    if isinstance(m, Case):
        n1, b1 = _subst_binder(m.name1, m.branch1, x, n, fv_n)
        n2, b2 = _subst_binder(m.name2, m.branch2, x, n, fv_n)
        return Case(_subst(m.scrutinee, x, n, fv_n), n1, m.ann1, b1, n2, m.ann2, b2)
    raise TypeError(f"not a term: {m!r}")


def rename(t: Term, free: Mapping[str, str], binder_names: Callable[[], str]) -> Term:
    """Rename free variables by ``free`` and give every binder a new name
    drawn from ``binder_names`` (which must not clash with anything)."""

    def go(u: Term, env: dict[str, str]) -> Term:
        if isinstance(u, Var):
            return Var(env.get(u.name, u.name))
        if isinstance(u, Abs):
            new = binder_names()
            return Abs(new, u.annotation, go(u.body, {**env, u.name: new}))
        if isinstance(u, App):
            return App(go(u.fun, env), go(u.arg, env))
        if isinstance(u, Pair):
            return Pair(go(u.first, env), go(u.second, env))
        if isinstance(u, Proj):
            return Proj(u.index, go(u.of, env))
        if isinstance(u, Inj):
            return Inj(u.index, go(u.of, env), u.disjunction)
        if isinstance(u, Absurd):
            return Absurd(go(u.of, env), u.target)
        if isinstance(u, Case):
            a, b = binder_names(), binder_names()
            return Case(
                go(u.scrutinee, env),
                a, u.ann1, go(u.branch1, {**env, u.name1: a}),
                b, u.ann2, go(u.branch2, {**env, u.name2: b}),
            )
        raise TypeError(f"not a term: {u!r}")

    return go(t, dict(free))


def term_size(t: Term) -> int:
    """Node count."""
    if isinstance(t, Var):
        return 1
    if isinstance(t, Abs):
        return 1 + term_size(t.body)
    if isinstance(t, App):
        return 1 + term_size(t.fun) + term_size(t.arg)
    if isinstance(t, Pair):
        return 1 + term_size(t.first) + term_size(t.second)
    if isinstance(t, (Proj, Inj, Absurd)):
        return 1 + term_size(t.of)
    if isinstance(t, Case):
        return 1 + term_size(t.scrutinee) + term_size(t.branch1) + term_size(t.branch2)
    raise TypeError(f"not a term: {t!r}")


def alpha_key(t: Term) -> tuple:
    """Nameless representation: bound variables become de Bruijn indices."""

    def go(u: Term, scope: tuple[str, ...]) -> tuple:
        if isinstance(u, Var):
            for i, name in enumerate(reversed(scope)):
                if name == u.name:
                    return ("bv", i)
            return ("fv", u.name)
        if isinstance(u, Abs):
            return ("lam", u.annotation.uid, go(u.body, scope + (u.name,)))
        if isinstance(u, App):
            return ("app", go(u.fun, scope), go(u.arg, scope))
        if isinstance(u, Pair):
            return ("pair", go(u.first, scope), go(u.second, scope))
        if isinstance(u, Proj):
            return ("proj", u.index, go(u.of, scope))
        if isinstance(u, Inj):
            d = u.disjunction.uid if u.disjunction is not None else None
            return ("inj", u.index, d, go(u.of, scope))
        if isinstance(u, Absurd):
            return ("absurd", u.target.uid, go(u.of, scope))
        if isinstance(u, Case):
            return (
                "case",
                go(u.scrutinee, scope),
                u.ann1.uid, go(u.branch1, scope + (u.name1,)),
                u.ann2.uid, go(u.branch2, scope + (u.name2,)),
            )
        raise TypeError(f"not a term: {u!r}")

    return go(t, ())


def alpha_equal(m: Term, n: Term) -> bool:
    return alpha_key(m) == alpha_key(n)


# --------------------------------------------------------------------------
# reduction


def _contract(t: Term, env: dict[str, Formula]) -> Optional[Term]:
    """Contract ``t`` if it is itself a beta- or permutation redex."""
    if isinstance(t, App) and isinstance(t.fun, Abs):
        return subst_term(t.fun.body, t.fun.name, t.arg)
    if isinstance(t, Proj) and isinstance(t.of, Pair):
        return t.of.first if t.index == 1 else t.of.second
    if isinstance(t, Case) and isinstance(t.scrutinee, Inj):
        inj = t.scrutinee
        if inj.index == 1:
            return subst_term(t.branch1, t.name1, inj.of)
        return subst_term(t.branch2, t.name2, inj.of)

    head = _eliminated(t)
    if isinstance(head, Case):
        # push the elimination into both branches, renaming binders that
        # would capture variables of the eliminator
        fv = _eliminator_free_vars(t)
        n1, b1 = head.name1, head.branch1
        n2, b2 = head.name2, head.branch2
        if n1 in fv:
            new = fresh_name(n1, fv | _all_names(b1))
            b1, n1 = subst_term(b1, n1, Var(new)), new
        if n2 in fv:
            new = fresh_name(n2, fv | _all_names(b2))
            b2, n2 = subst_term(b2, n2, Var(new)), new
        return Case(head.scrutinee, n1, head.ann1, _reattach(t, b1), n2, head.ann2, _reattach(t, b2))
    if isinstance(head, Absurd):
        # M[phi] E  =>  M[psi] where psi is the type of the whole elimination
        return Absurd(head.of, _eliminated_type(t, head.target, env))
    return None


def _eliminated(t: Term) -> Optional[Term]:
    """The term an elimination acts on, or None for non-eliminations."""
    if isinstance(t, App):
        return t.fun
    if isinstance(t, (Proj, Absurd)):
        return t.of
    if isinstance(t, Case):
        return t.scrutinee
    return None


def _eliminator_free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, App):
        return free_vars(t.arg)
    if isinstance(t, Case):
        return (free_vars(t.branch1) - {t.name1}) | (free_vars(t.branch2) - {t.name2})
    return frozenset()


def _reattach(t: Term, inner: Term) -> Term:
    if isinstance(t, App):
        return App(inner, t.arg)
    if isinstance(t, Proj):
        return Proj(t.index, inner)
    if isinstance(t, Absurd):
        return Absurd(inner, t.target)
    assert isinstance(t, Case)
    return Case(inner, t.name1, t.ann1, t.branch1, t.name2, t.ann2, t.branch2)


def _eliminated_type(t: Term, head_type: Formula, env: dict[str, Formula]) -> Formula:
    if isinstance(t, App):
        if not isinstance(head_type, Impl):
            raise TypeCheckError(f"(->E) on a falsum elimination of type {head_type}")
        return head_type.right
    if isinstance(t, Proj):
        if not isinstance(head_type, Conj):
            raise TypeCheckError(f"(/\\E) on a falsum elimination of type {head_type}")
        return head_type.left if t.index == 1 else head_type.right
    if isinstance(t, Absurd):
        return t.target
    assert isinstance(t, Case)
    return _synth({**env, t.name1: t.ann1}, t.branch1, "/branch1")


def _children(t: Term, env: dict[str, Formula]) -> list[tuple[Term, dict[str, Formula], Callable[[Term], Term]]]:
    """Immediate subterms, left to right, with their typing environments and
    a function rebuilding ``t`` around a replacement."""
    if isinstance(t, Abs):
        return [(t.body, {**env, t.name: t.annotation}, lambda b: Abs(t.name, t.annotation, b))]
    if isinstance(t, App):
        return [(t.fun, env, lambda f: App(f, t.arg)), (t.arg, env, lambda a: App(t.fun, a))]
    if isinstance(t, Pair):
        return [(t.first, env, lambda a: Pair(a, t.second)), (t.second, env, lambda b: Pair(t.first, b))]
    if isinstance(t, Proj):
        return [(t.of, env, lambda a: Proj(t.index, a))]
    if isinstance(t, Inj):
        return [(t.of, env, lambda a: Inj(t.index, a, t.disjunction))]
    if isinstance(t, Absurd):
        return [(t.of, env, lambda a: Absurd(a, t.target))]
    if isinstance(t, Case):
        return [
            (t.scrutinee, env, lambda s: Case(s, t.name1, t.ann1, t.branch1, t.name2, t.ann2, t.branch2)),
            (t.branch1, {**env, t.name1: t.ann1},
             lambda b: Case(t.scrutinee, t.name1, t.ann1, b, t.name2, t.ann2, t.branch2)),
            (t.branch2, {**env, t.name2: t.ann2},
             lambda b: Case(t.scrutinee, t.name1, t.ann1, t.branch1, t.name2, t.ann2, b)),
        ]
    return []


def _step_outermost(t: Term, env: dict[str, Formula]) -> Optional[Term]:
    r = _contract(t, env)
    if r is not None:
        return r
    for child, cenv, rebuild in _children(t, env):
        r = _step_outermost(child, cenv)
        if r is not None:
            return rebuild(r)
    return None


def _step_innermost(t: Term, env: dict[str, Formula]) -> Optional[Term]:
    for child, cenv, rebuild in reversed(_children(t, env)):
        r = _step_innermost(child, cenv)
        if r is not None:
            return rebuild(r)
    return _contract(t, env)


def reduce_step(t: Term, ctx: Union[Context, Env, None] = None) -> Optional[Term]:
    """One leftmost-outermost contraction, or None when ``t`` is normal.

    ``ctx`` types the free variables; it is only consulted when a falsum
    elimination is permuted with a case, whose result type must be computed.
    """
    return _step_outermost(t, _env(ctx))


def reduce_step_innermost(t: Term, ctx: Union[Context, Env, None] = None) -> Optional[Term]:
    """One rightmost-innermost contraction, or None when ``t`` is normal."""
    return _step_innermost(t, _env(ctx))


def _is_redex(t: Term) -> bool:
    if isinstance(t, App) and isinstance(t.fun, Abs):
        return True
    if isinstance(t, Proj) and isinstance(t.of, Pair):
        return True
    if isinstance(t, Case) and isinstance(t.scrutinee, Inj):
        return True
    return isinstance(_eliminated(t), (Case, Absurd))


def is_normal(t: Term) -> bool:
    """True when no beta- or permutation redex occurs in ``t``."""
    if _is_redex(t):
        return False
    return all(is_normal(child) for child, _, _ in _children(t, {}))


def normalize(
    t: Term,
    ctx: Union[Context, Env, None] = None,
    *,
    strategy: str = "outermost",
    max_steps: int = 100_000,
) -> Term:
    """Reduce to normal form.  The term is typechecked first; ``max_steps``
    guards against runaway reduction."""
    env = _env(ctx)
    _synth(env, t, "")
    step = _step_outermost if strategy == "outermost" else _step_innermost
    for _ in range(max_steps):
        r = step(t, env)
        if r is None:
            return t
        t = r
    raise RuntimeError(f"no normal form within {max_steps} steps")


# --------------------------------------------------------------------------
# long normal forms


def _spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``x E1 ... En`` into its head and eliminators (outermost last)."""
    elims: list[Term] = []
    while True:
        inner = _eliminated(t)
        if inner is None:
            break
        elims.append(t)
        t = inner
    elims.reverse()
    return t, elims


def is_long_normal(ctx: Union[Context, Env, None], t: Term, goal: Formula) -> bool:
    """Whether ``t`` is a long normal form of type ``goal``."""
    try:
        return _lnf(_env(ctx), t, goal)
    except TypeCheckError:
        return False


def _lnf(env: dict[str, Formula], t: Term, goal: Formula) -> bool:
    if isinstance(t, Abs):
        return (
            isinstance(goal, Impl)
            and goal.left is t.annotation
            and _lnf({**env, t.name: t.annotation}, t.body, goal.right)
        )
    if isinstance(t, Pair):
        return isinstance(goal, Conj) and _lnf(env, t.first, goal.left) and _lnf(env, t.second, goal.right)
    if isinstance(t, Inj):
        if not isinstance(goal, Disj) or (t.disjunction is not None and t.disjunction is not goal):
            return False
        return _lnf(env, t.of, goal.left if t.index == 1 else goal.right)

    head, elims = _spine(t)
    if not isinstance(head, Var) or head.name not in env:
        return False
    last = elims[-1] if elims else None
    if isinstance(last, (Case, Absurd)):
        if not (is_atom(goal) or isinstance(goal, Disj)):
            return False
        body, final = elims[:-1], last
    else:
        if not is_atom(goal):
            return False
        body, final = elims, None

    ty = env[head.name]
    for e in body:
        if isinstance(e, App):
            if not isinstance(ty, Impl) or not _lnf(env, e.arg, ty.left):
                return False
            ty = ty.right
        elif isinstance(e, Proj):
            if not isinstance(ty, Conj):
                return False
            ty = ty.left if e.index == 1 else ty.right
        else:
            return False
    if final is None:
        return ty is goal
    if isinstance(final, Absurd):
        return ty is FALSUM and final.target is goal
    return (
        isinstance(ty, Disj)
        and ty.left is final.ann1
        and ty.right is final.ann2
        and _lnf({**env, final.name1: final.ann1}, final.branch1, goal)
        and _lnf({**env, final.name2: final.ann2}, final.branch2, goal)
    )


# --------------------------------------------------------------------------
# beta-eta equality on the implicational fragment


def _require_implicational(t: Term) -> None:
    if isinstance(t, Var):
        return
    if isinstance(t, Abs):
        _require_implicational(t.body)
    elif isinstance(t, App):
        _require_implicational(t.fun)
        _require_implicational(t.arg)
    else:
        raise ValueError(f"beta-eta equality is only defined on lambda terms, got {type(t).__name__}")


def _eta(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        return App(_eta(t.fun), _eta(t.arg))
    body = _eta(t.body)
    if isinstance(body, App) and body.arg == Var(t.name) and t.name not in free_vars(body.fun):
        return body.fun
    return Abs(t.name, t.annotation, body)


def beta_eta_normal(t: Term, max_steps: int = 100_000) -> Term:
    _require_implicational(t)
    for _ in range(max_steps):
        r = _step_outermost(t, {})
        if r is None:
            return _eta(t)
        t = r
    raise RuntimeError(f"no beta normal form within {max_steps} steps")


def beta_eta_equal(m: Term, n: Term) -> bool:
    """Compare beta-normal, eta-reduced forms up to renaming of bound variables."""
    return alpha_equal(beta_eta_normal(m), beta_eta_normal(n))


# --------------------------------------------------------------------------
# printing


def print_term(t: Term) -> str:
    """Concrete syntax accepted by :func:`intuit.parsing.parse_term`."""

    def atom(u: Term) -> str:
        if isinstance(u, Var):
            return u.name
        if isinstance(u, Proj):
            return f"{atom(u.of)}.{u.index}"
        if isinstance(u, Pair):
            return f"<{top(u.first)}, {top(u.second)}>"
        return f"({top(u)})"

    def app(u: Term) -> str:
        if isinstance(u, App):
            return f"{app(u.fun)} {atom(u.arg)}"
        return atom(u)

    def top(u: Term) -> str:
        if isinstance(u, Abs):
            return f"\\{u.name}:{print_formula(u.annotation)}. {top(u.body)}"
        if isinstance(u, Case):
            return (
                f"case {top(u.scrutinee)} of {u.name1}:{print_formula(u.ann1)} => {branch(u.branch1)}"
                f" | {u.name2}:{print_formula(u.ann2)} => {top(u.branch2)}"
            )
        if isinstance(u, Absurd):
            return f"absurd {atom(u.of)} : {print_formula(u.target)}"
        if isinstance(u, Inj):
            ann = "" if u.disjunction is None else f" : {print_formula(u.disjunction)}"
            return f"in{u.index} {atom(u.of)}{ann}"
        return app(u)

    def branch(u: Term) -> str:
        s = top(u)
        return f"({s})" if isinstance(u, (Abs, Case, Absurd, Inj)) else s

    return top(t)
