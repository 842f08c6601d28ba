"""Concrete syntax for formulas, sequents and proof terms.

Formulas::

    formula  := implpart
    implpart := disjpart ("->" implpart)?
    disjpart := conjpart ("\\/" conjpart)*
    conjpart := unit ("/\\" unit)*
    unit     := ident | "false" | "~" unit | "(" formula ")"

Unicode connectives (→ ∨ ∧ ¬ ⊥) are accepted as well.  A sequent is a
comma-separated list of formulas, ``|-`` and a goal formula.

Terms::

    \\x:F. t    t u    <t, u>    t.1    t.2    in1 t [: F]    in2 t [: F]
    case t of x:F => u | y:G => v    absurd t : F
"""

from __future__ import annotations

import re
from typing import Optional

from .formula import FALSUM, Conj, Disj, Formula, Impl, Var
from . import terms as T

__all__ = ["ParseError", "parse_formula", "parse_sequent", "parse_term", "strip_comments"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<turnstile>\|-|⊢)
  | (?P<arrow>->|→)
  | (?P<darrow>=>)
  | (?P<disj>\\/|∨)
  | (?P<conj>/\\|∧)
  | (?P<neg>~|¬)
  | (?P<bot>⊥)
  | (?P<proj>\.[12](?![0-9]))
  | (?P<ident>[a-zA-Z][a-zA-Z0-9_']*)
  | (?P<punct>[()<>,:.|\\λ])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"false", "case", "of", "in1", "in2", "absurd"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group()
        if kind == "punct":
            kind = "lambda" if value in "\\λ" else value
        elif kind == "ident" and value in _KEYWORDS:
            kind = value
        if kind != "ws":
            out.append((kind, value, pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def kind(self) -> str:
        return self.toks[self.i][0]

    def error(self, message: str) -> ParseError:
        kind, value, pos = self.toks[self.i]
        found = "end of input" if kind == "eof" else repr(value)
        return ParseError(f"{message}, found {found}", pos, self.text)

    def take(self, kind: str) -> str:
        if self.kind != kind:
            raise self.error(f"expected {kind!r}")
        value = self.toks[self.i][1]
        self.i += 1
        return value

    def accept(self, kind: str) -> bool:
        if self.kind == kind:
            self.i += 1
            return True
        return False

    def done(self) -> None:
        if self.kind != "eof":
            raise self.error("unexpected trailing input")

    # formulas

    def formula(self) -> Formula:
        left = self.disjpart()
        if self.accept("arrow"):
            return Impl(left, self.formula())
        return left

    def disjpart(self) -> Formula:
        f = self.conjpart()
        while self.accept("disj"):
            f = Disj(f, self.conjpart())
        return f

    def conjpart(self) -> Formula:
        f = self.unit()
        while self.accept("conj"):
            f = Conj(f, self.unit())
        return f

    def unit(self) -> Formula:
        if self.kind == "ident":
            return Var(self.take("ident"))
        if self.accept("false") or self.accept("bot"):
            return FALSUM
        if self.accept("neg"):
            return Impl(self.unit(), FALSUM)
        if self.accept("("):
            f = self.formula()
            self.take(")")
            return f
        raise self.error("expected a formula")

    # terms

    def term(self) -> T.Term:
        if self.accept("lambda"):
            name = self.take("ident")
            self.take(":")
            ann = self.formula()
            self.take(".")
            return T.Abs(name, ann, self.term())
        if self.accept("case"):
            scrutinee = self.term()
            self.take("of")
            n1 = self.take("ident")
            self.take(":")
            a1 = self.formula()
            self.take("darrow")
            b1 = self.term()
            self.take("|")
            n2 = self.take("ident")
            self.take(":")
            a2 = self.formula()
            self.take("darrow")
            b2 = self.term()
            return T.Case(scrutinee, n1, a1, b1, n2, a2, b2)
        if self.accept("absurd"):
            of = self.atom_term()
            self.take(":")
            return T.Absurd(of, self.formula())
        if self.kind in ("in1", "in2"):
            index = 1 if self.take(self.kind) == "in1" else 2
            of = self.atom_term()
            ann: Optional[Formula] = self.formula() if self.accept(":") else None
            return T.Inj(index, of, ann)
        t = self.atom_term()
        while self.kind in ("ident", "(", "<"):
            t = T.App(t, self.atom_term())
        return t

    def atom_term(self) -> T.Term:
        if self.kind == "ident":
            t: T.Term = T.Var(self.take("ident"))
        elif self.accept("("):
            t = self.term()
            self.take(")")
        elif self.accept("<"):
            first = self.term()
            self.take(",")
            second = self.term()
            self.take(">")
            t = T.Pair(first, second)
        else:
            raise self.error("expected a term")
        while self.kind == "proj":
            t = T.Proj(int(self.take("proj")[1]), t)
        return t


def strip_comments(text: str) -> str:
    """Drop ``#`` comment lines and blank lines."""
    return "\n".join(
        line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")
    )


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.done()
    return f


def parse_sequent(text: str) -> tuple[list[Formula], Formula]:
    """Parse ``A, B |- C`` (or a bare formula, meaning an empty context)."""
    p = _Parser(text)
    if p.accept("turnstile"):
        hyps: list[Formula] = []
    else:
        first = p.formula()
        if p.kind == "eof":
            return [], first
        hyps = [first]
        while p.accept(","):
            hyps.append(p.formula())
        p.take("turnstile")
    goal = p.formula()
    p.done()
    return hyps, goal


def parse_term(text: str) -> T.Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t
