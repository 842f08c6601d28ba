"""Random well-typed proof terms with plenty of redexes."""

from __future__ import annotations

import random

from intuit.formula import FALSUM, Conj, Disj, Formula, Impl, Var as F
from intuit import terms as T

p, q = F("p"), F("q")
ENV: dict[str, Formula] = {"z": FALSUM, "a": p, "b": q, "d": Disj(p, q), "f": Impl(p, q)}
SMALL = [p, q, Impl(p, q), Conj(p, q), Disj(q, p), Impl(q, p)]


class TermGen:
    def __init__(self, seed: int) -> None:
        self.rng = random.Random(seed)
        self.n = 0

    def fresh(self) -> str:
        self.n += 1
        return f"v{self.n}"

    def small(self) -> Formula:
        return self.rng.choice(SMALL)

    def term(self, env: dict[str, Formula], goal: Formula, depth: int) -> T.Term:
        rng = self.rng
        names = [x for x, ty in env.items() if ty is goal]
        if depth <= 0:
            if names:
                return T.Var(rng.choice(names))
            return self.intro(env, goal, depth) or T.Absurd(T.Var("z"), goal)
        kind = rng.choice(["var", "intro", "intro", "beta", "proj", "case", "perm_case", "perm_absurd", "absurd"])
        if kind == "var" and names:
            return T.Var(rng.choice(names))
        if kind == "intro":
            t = self.intro(env, goal, depth)
            if t is not None:
                return t
        if kind == "beta":
            a = self.small()
            x = self.fresh()
            return T.App(T.Abs(x, a, self.term({**env, x: a}, goal, depth - 1)), self.term(env, a, depth - 1))
        if kind == "proj":
            b = self.small()
            return T.Proj(1, T.Pair(self.term(env, goal, depth - 1), self.term(env, b, depth - 1)))
        if kind == "case":
            a, b = self.small(), self.small()
            x, y = self.fresh(), self.fresh()
            i = rng.choice((1, 2))
            scrut = T.Inj(i, self.term(env, a if i == 1 else b, depth - 1), Disj(a, b))
            return T.Case(
                scrut, x, a, self.term({**env, x: a}, goal, depth - 1), y, b, self.term({**env, y: b}, goal, depth - 1)
            )
        if kind == "perm_case":
            c = self.small()
            x, y = self.fresh(), self.fresh()
            inner = T.Case(
                T.Var("d"),
                x,
                p,
                self.term({**env, x: p}, Impl(c, goal), depth - 1),
                y,
                q,
                self.term({**env, y: q}, Impl(c, goal), depth - 1),
            )
            return T.App(inner, self.term(env, c, depth - 1))
        if kind == "perm_absurd":
            c = self.small()
            return T.App(T.Absurd(T.Var("z"), Impl(c, goal)), self.term(env, c, depth - 1))
        return T.Absurd(self.term(env, FALSUM, depth - 1), goal)

    def intro(self, env, goal, depth):
        if isinstance(goal, Impl):
            x = self.fresh()
            return T.Abs(x, goal.left, self.term({**env, x: goal.left}, goal.right, depth - 1))
        if isinstance(goal, Conj):
            return T.Pair(self.term(env, goal.left, depth - 1), self.term(env, goal.right, depth - 1))
        if isinstance(goal, Disj):
            i = self.rng.choice((1, 2))
            return T.Inj(i, self.term(env, goal.left if i == 1 else goal.right, depth - 1), goal)
        return None


def generate(count: int, seed: int = 7, depth: int = 4) -> list[tuple[T.Term, Formula]]:
    g = TermGen(seed)
    out = []
    for _ in range(count):
        goal = g.small()
        out.append((g.term(dict(ENV), goal, depth), goal))
    return out
