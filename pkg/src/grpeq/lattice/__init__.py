"""Exact integer lattice algebra and the free abelian solver."""

from .diophantine import (EMPTY, AffineLattice, CongruenceBox, LinearForm, avoid_affine_subsets,
                          lattice_intersect, linear_form, solve_abelian, solve_diophantine)
from .intmat import det, hnf, is_hnf, is_snf, kernel, snf
from .maschke import (NotInvariantError, ZGModuleAction, direct_sum_index, invariant_projector,
                      maschke_complement)

__all__ = [
    "EMPTY",
    "AffineLattice",
    "CongruenceBox",
    "LinearForm",
    "NotInvariantError",
    "ZGModuleAction",
    "avoid_affine_subsets",
    "det",
    "direct_sum_index",
    "hnf",
    "invariant_projector",
    "is_hnf",
    "is_snf",
    "kernel",
    "lattice_intersect",
    "linear_form",
    "maschke_complement",
    "snf",
    "solve_abelian",
    "solve_diophantine",
]
