"""Finite permutation groups and exhaustive search over finite groups."""

from .group import FiniteGroup, GroupAxiomError, allowed_elements, from_table
from .perm import Perm, closure, perm_compose
from .solve import (AssignmentCapExceeded, enumerate_assignments, iter_solutions,
                    solve_finite)

__all__ = [
    "AssignmentCapExceeded",
    "FiniteGroup",
    "GroupAxiomError",
    "Perm",
    "allowed_elements",
    "closure",
    "enumerate_assignments",
    "from_table",
    "iter_solutions",
    "perm_compose",
    "solve_finite",
]
