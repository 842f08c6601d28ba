"""Proof search, proof terms, automata and Kripke models for intuitionistic
propositional logic."""

from .formula import FALSUM, Conj, Disj, Falsum, Formula, Impl, Var, neg, print_formula
from .fragments import classify
from .kripke import KripkeModel, countermodel_2plus, countermodel_search, forces
from .parsing import ParseError, parse_formula, parse_sequent, parse_term
from .prover import ProofSearchResult, is_provable, prove, prove_iipc
from .terms import Context, check, normalize, print_term, typecheck

__all__ = [
    "FALSUM",
    "Conj",
    "Disj",
    "Falsum",
    "Formula",
    "Impl",
    "Var",
    "neg",
    "print_formula",
    "classify",
    "KripkeModel",
    "countermodel_2plus",
    "countermodel_search",
    "forces",
    "ParseError",
    "parse_formula",
    "parse_sequent",
    "parse_term",
    "ProofSearchResult",
    "is_provable",
    "prove",
    "prove_iipc",
    "Context",
    "check",
    "normalize",
    "print_term",
    "typecheck",
]
