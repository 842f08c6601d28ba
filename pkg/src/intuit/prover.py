"""Goal-directed proof search producing long normal forms.

``prove`` handles full intuitionistic propositional logic; ``prove_iipc`` is
the specialization to implication only.  Both search over judgements
``Gamma |- goal`` where Gamma is a set of formulas, with cycle pruning on
the current path and memoization of results.

Hypotheses are named after their formula (``h<uid>``) during search, so a
proof found once can be reused in any context containing the same
formulas.  A final pass renames everything to readable names.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from ._deep import run_deep
from .formula import (
    FALSUM,
    Conj,
    Disj,
    Formula,
    Impl,
    arguments,
    is_implicational,
    print_formula,
    target,
    targets,
    trace_paths,
)
from .terms import (
    Abs,
    Absurd,
    App,
    Case,
    Context,
    Inj,
    Pair,
    Proj,
    Term,
    Var,
    alpha_key,
    rename,
    term_size,
)

__all__ = [
    "SearchStats",
    "ProofSearchResult",
    "prove",
    "prove_iipc",
    "is_provable",
    "enumerate_normal_inhabitants",
]

_INF = math.inf


@dataclass
class SearchStats:
    visited: int = 0
    max_depth: int = 0


@dataclass
class ProofSearchResult:
    provable: bool
    witness: Optional[Term]
    stats: SearchStats = field(default_factory=SearchStats)

    def __bool__(self) -> bool:
        return self.provable


def _hyp(f: Formula) -> str:
    return f"h{f.uid}"


def _as_context(ctx: Union[Context, Iterable[Formula], None]) -> Context:
    if ctx is None:
        return Context()
    if isinstance(ctx, Context):
        return ctx
    return Context((f"a{i}", f) for i, f in enumerate(ctx))


class _Search:
    """Shared cycle-pruning and memo policy.

    ``solve`` returns ``(term or None, low)`` where ``low`` is the smallest
    path depth of an ancestor judgement hit by pruning inside the subtree.
    A failure is path-independent, and so cacheable, when the pruning
    never reached above the failing node.
    """

    def __init__(self, ctx: Context) -> None:
        # context formulas first, in insertion order; formulas added during
        # search after them, in a history-independent order
        self.rank: dict[Formula, tuple] = {}
        for f in ctx.formulas():
            self.rank.setdefault(f, (len(self.rank), ""))
        self.stats = SearchStats()
        self.proved: dict[tuple, Term] = {}
        self.refuted: set[tuple] = set()
        self.on_path: dict[tuple, int] = {}

    def solve(self, hyps: frozenset[Formula], goal: Formula, depth: int = 0) -> tuple[Optional[Term], float]:
        key = (hyps, goal)
        hit = self.proved.get(key)
        if hit is not None:
            return hit, _INF
        if key in self.refuted:
            return None, _INF
        seen = self.on_path.get(key)
        if seen is not None:
            return None, seen
        self.stats.visited += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        self.on_path[key] = depth
        low = _INF
        try:
            for attempt in self.alternatives(hyps, goal, depth + 1):
                term, sub_low = attempt
                low = min(low, sub_low)
                if term is not None:
                    self.proved[key] = term
                    return term, _INF
        finally:
            del self.on_path[key]
        if low >= depth:
            self.refuted.add(key)
            return None, _INF
        return None, low

    def alternatives(self, hyps, goal, depth) -> Iterator[tuple[Optional[Term], float]]:
        raise NotImplementedError

    def order_of(self, hyps: Iterable[Formula]) -> list[Formula]:
        return sorted(hyps, key=self._rank)

    def _rank(self, f: Formula) -> tuple:
        r = self.rank.get(f)
        if r is None:
            r = self.rank[f] = (len(self.rank) + 1_000_000_000, print_formula(f))
        return r

    def all_of(self, jobs: Iterable[tuple[frozenset[Formula], Formula]], depth: int):
        """Solve subgoals left to right, stopping at the first failure."""
        terms: list[Term] = []
        low = _INF
        for hyps, goal in jobs:
            t, sub_low = self.solve(hyps, goal, depth)
            low = min(low, sub_low)
            if t is None:
                return None, low
            terms.append(t)
        return terms, low


class _Wajsberg(_Search):
    def alternatives(self, hyps, goal, depth):
        if isinstance(goal, Conj):
            parts, low = self.all_of([(hyps, goal.left), (hyps, goal.right)], depth)
            yield (Pair(*parts) if parts else None), low
            return
        if isinstance(goal, Impl):
            body, low = self.solve(hyps | {goal.left}, goal.right, depth)
            yield (Abs(_hyp(goal.left), goal.left, body) if body else None), low
            return
        if isinstance(goal, Disj):
            for index, side in ((1, goal.left), (2, goal.right)):
                t, low = self.solve(hyps, side, depth)
                yield (Inj(index, t, goal) if t else None), low
        usable = [h for h in hyps if _eliminable(h, goal)]
        for h in self.order_of(usable):
            for alpha in targets(h):
                if not (alpha is goal or alpha is FALSUM or isinstance(alpha, Disj)):
                    continue
                for path in trace_paths(alpha, h):
                    yield self._eliminate(hyps, goal, h, alpha, path, depth)

    def _eliminate(self, hyps, goal, h, alpha, path, depth):
        args = [s[1] for s in path if s[0] == "app"]
        proofs, low = self.all_of([(hyps, a) for a in args], depth)
        if proofs is None:
            return None, low
        spine = _build_spine(Var(_hyp(h)), path, proofs)
        if isinstance(alpha, Disj):
            left, l1 = self.solve(hyps | {alpha.left}, goal, depth)
            low = min(low, l1)
            if left is None:
                return None, low
            right, l2 = self.solve(hyps | {alpha.right}, goal, depth)
            low = min(low, l2)
            if right is None:
                return None, low
            return Case(spine, _hyp(alpha.left), alpha.left, left, _hyp(alpha.right), alpha.right, right), low
        if alpha is goal:
            return spine, low
        return Absurd(spine, goal), low


def _eliminable(h: Formula, goal: Formula) -> bool:
    return any(a is goal or a is FALSUM or isinstance(a, Disj) for a in targets(h))


def _build_spine(head: Term, path: tuple, proofs: list[Term]) -> Term:
    it = iter(proofs)
    t = head
    for kind, value in path:
        t = App(t, next(it)) if kind == "app" else Proj(value, t)
    return t


class _BenYelles(_Search):
    def alternatives(self, hyps, goal, depth):
        if isinstance(goal, Impl):
            body, low = self.solve(hyps | {goal.left}, goal.right, depth)
            yield (Abs(_hyp(goal.left), goal.left, body) if body else None), low
            return
        for h in self.order_of([h for h in hyps if target(h) is goal]):
            args = arguments(h)
            proofs, low = self.all_of([(hyps, a) for a in args], depth)
            if proofs is None:
                yield None, low
                continue
            t: Term = Var(_hyp(h))
            for p in proofs:
                t = App(t, p)
            yield t, low



# -- readable names -----------------------------------------------------------

_BINDER_BASES = ("x", "y", "z", "u", "v", "w")


def _binder_names(avoid: set[str]) -> Iterator[str]:
    for n in itertools.count():
        for base in _BINDER_BASES:
            name = base if n == 0 else f"{base}{n}"
            if name not in avoid:
                yield name


def _readable(t: Term, ctx: Context) -> Term:
    free: dict[str, str] = {}
    for name, f in ctx.items():
        free.setdefault(_hyp(f), name)
    names = _binder_names(set(ctx))
    return rename(t, free, lambda: next(names))


def _run(engine: _Search, ctx: Context, goal: Formula) -> ProofSearchResult:
    hyps = frozenset(ctx.formulas())

    def search() -> Optional[Term]:
        term, _ = engine.solve(hyps, goal)
        return None if term is None else _readable(term, ctx)

    term = run_deep(search)
    return ProofSearchResult(term is not None, term, engine.stats)


def prove(ctx: Union[Context, Iterable[Formula], None], goal: Formula) -> ProofSearchResult:
    """Decide ``ctx |- goal`` in full IPC, returning a long normal witness."""
    ctx = _as_context(ctx)
    return _run(_Wajsberg(ctx), ctx, goal)


def prove_iipc(ctx: Union[Context, Iterable[Formula], None], goal: Formula) -> ProofSearchResult:
    """Decide an implicational judgement with the implication rules only."""
    ctx = _as_context(ctx)
    for f in [*ctx.formulas(), goal]:
        if not is_implicational(f):
            raise ValueError(f"not an implicational formula: {f}")
    return _run(_BenYelles(ctx), ctx, goal)


def is_provable(goal: Formula, ctx: Union[Context, Iterable[Formula], None] = None) -> bool:
    return prove(ctx, goal).provable


# -- enumeration ---------------------------------------------------------------


def enumerate_normal_inhabitants(goal: Formula, max_term_size: int) -> list[Term]:
    """All closed long normal inhabitants of an implicational ``goal`` with at
    most ``max_term_size`` nodes, one per alpha-class, smallest first."""
    if not is_implicational(goal):
        raise ValueError(f"not an implicational formula: {goal}")
    found = _inhabitants((), goal, max_term_size)
    out: dict[tuple, Term] = {}
    for t in sorted(found, key=term_size):
        out.setdefault(alpha_key(t), t)
    return list(out.values())


def _inhabitants(env: tuple[tuple[str, Formula], ...], goal: Formula, budget: int) -> list[Term]:
    if budget <= 0:
        return []
    if isinstance(goal, Impl):
        name = f"x{len(env) + 1}"
        bodies = _inhabitants(env + ((name, goal.left),), goal.right, budget - 1)
        return [Abs(name, goal.left, b) for b in bodies]
    out: list[Term] = []
    seen_names: set[str] = set()
    for name, f in reversed(env):
        if name in seen_names:
            continue
        seen_names.add(name)
        if target(f) is not goal:
            continue
        args = arguments(f)
        # head plus one application node per argument
        rest = budget - 1 - len(args)
        if rest < len(args):
            continue
        for proofs in _argument_lists(env, args, rest):
            t: Term = Var(name)
            for p in proofs:
                t = App(t, p)
            out.append(t)
    return out


def _argument_lists(env, args: list[Formula], budget: int) -> Iterator[list[Term]]:
    if not args:
        yield []
        return
    # every later argument needs at least one node
    for first in _inhabitants(env, args[0], budget - (len(args) - 1)):
        for rest in _argument_lists(env, args[1:], budget - term_size(first)):
            yield [first, *rest]
