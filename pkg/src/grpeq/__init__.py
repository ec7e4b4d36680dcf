"""Satisfiability of equations and inequations with recognisable constraints
over finite, free abelian, free, product, extension and wreath groups."""

from .core import (SAT, UNKNOWN, UNSAT, Const, EqWord, Occurrence, SolverContext, System, Verdict,
                   check_witness, combine_verdicts, evaluate, word)
from .combinators import solve, solve_virtually_direct_product

__all__ = [
    "SAT", "UNKNOWN", "UNSAT", "Const", "EqWord", "Occurrence", "SolverContext", "System",
    "Verdict", "check_witness", "combine_verdicts", "evaluate", "solve",
    "solve_virtually_direct_product", "word",
]
