"""Invariant complements of submodules of integral representations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..core import GroupEqError
from . import intmat


class NotInvariantError(GroupEqError):
    pass


@dataclass
class ZGModuleAction:
    """Integral action of a finite group on Z^r.

    ``matrices[q]`` acts on column vectors; element indices follow the
    FiniteGroup, and ``matrices[p*q] == matrices[p] @ matrices[q]``.
    """

    group: object  # permfin.FiniteGroup
    matrices: list

    def __post_init__(self):
        G = self.group
        self.matrices = [intmat.mat(M) for M in self.matrices]
        if len(self.matrices) != G.order:
            raise ValueError("need one matrix per group element")
        self.rank = len(self.matrices[0])
        for i, M in enumerate(self.matrices):
            if len(M) != self.rank or any(len(row) != self.rank for row in M):
                raise ValueError(f"matrix {i} is not {self.rank}x{self.rank}")
            if intmat.det(M) == 0:
                raise ValueError(f"matrix {i} is singular")
        for p in range(G.order):
            for q in range(G.order):
                if intmat.matmul(self.matrices[p], self.matrices[q]) != self.matrices[G.mul(p, q)]:
                    raise ValueError(f"not a homomorphism at pair ({p}, {q})")

    def act(self, q: int, v: Sequence[int]) -> list[int]:
        return intmat.matvec(self.matrices[q], v)

    def is_invariant(self, basis: Sequence[Sequence[int]]) -> bool:
        H = intmat.lattice_hnf(basis, self.rank)
        return all(intmat.in_lattice(H, self.act(q, w))
                   for q in range(self.group.order) for w in basis)


def _complete_basis(W: list[list[int]], r: int) -> list[list[int]]:
    B = [list(w) for w in W]
    for j in range(r):
        e = [int(i == j) for i in range(r)]
        if intmat.frac_rank(B + [e]) > len(B):
            B.append(e)
        if len(B) == r:
            break
    return B


def _frac_matmul(A, B):
    n = len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(n)]
            for i in range(len(A))]


def invariant_projector(action: ZGModuleAction, W: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Group-averaged projector onto W (x) Q along an invariant complement."""
    r = action.rank
    k = len(W)
    cols = _complete_basis([list(w) for w in W], r)
    B = intmat.transpose(cols, r)  # basis vectors as columns
    Binv = intmat.frac_inverse(B)
    D = [[Fraction(int(i == j and i < k)) for j in range(r)] for i in range(r)]
    P = _frac_matmul(_frac_matmul(B, D), Binv)
    G = action.group
    total = [[Fraction(0)] * r for _ in range(r)]
    for q in range(G.order):
        M = action.matrices[q]
        Minv = action.matrices[G.inv(q)]
        term = _frac_matmul(_frac_matmul(M, P), Minv)
        total = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(total, term)]
    return [[x / G.order for x in row] for row in total]


def maschke_complement(action: ZGModuleAction, W: Sequence[Sequence[int]]) -> list[list[int]]:
    """Invariant sublattice U with U & W = 0 and U + W of finite index.

    U is the integer kernel of the averaged projector after clearing
    denominators by their common multiple; it is saturated.
    """
    r = action.rank
    W = intmat.lattice_hnf(W, r)
    if not action.is_invariant(W):
        raise NotInvariantError("W is not invariant under the action")
    if not W:
        return intmat.identity(r)
    P = invariant_projector(action, W)
    m = intmat.lcm_denominators(P)
    Pint = [[int(x * m) for x in row] for row in P]
    U = intmat.kernel(Pint, r)
    return intmat.lattice_hnf(U, r)


def direct_sum_index(U: Sequence[Sequence[int]], W: Sequence[Sequence[int]], r: int) -> int | None:
    """Index of U + W in Z^r when the sum is direct and of full rank, else None."""
    rows = [list(u) for u in U] + [list(w) for w in W]
    if len(rows) != r or intmat.rank(rows, r) != r:
        return None
    return abs(intmat.det(rows))
