"""Linear Diophantine systems, congruence boxes, and the free abelian solver."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..core import SolverContext, Verdict, combine_verdicts, sat, unsat
from . import intmat
from .intmat import Matrix


@dataclass(frozen=True)
class AffineLattice:
    """``{basepoint + sum z_i * basis[i]}``; basis vectors are independent."""

    basepoint: tuple
    basis: tuple  # tuple of vectors

    @property
    def dim(self) -> int:
        return len(self.basepoint)

    @property
    def params(self) -> int:
        return len(self.basis)

    def point(self, z: Sequence[int]) -> tuple:
        x = list(self.basepoint)
        for zi, b in zip(z, self.basis):
            if zi:
                x = [a + zi * c for a, c in zip(x, b)]
        return tuple(x)

    def matrix(self) -> Matrix:
        """Basis vectors as columns."""
        return intmat.transpose([list(b) for b in self.basis], self.dim) if self.basis else \
            [[] for _ in range(self.dim)]

    def contains(self, x: Sequence[int]) -> bool:
        diff = [a - b for a, b in zip(x, self.basepoint)]
        return intmat.in_lattice(intmat.lattice_hnf(self.basis, self.dim), diff)


EMPTY = None


def solve_diophantine(A: Matrix, b: Sequence[int], ncols: int | None = None) -> AffineLattice | None:
    """Exact solution set of ``A x = b`` over the integers, or ``None``."""
    m, n = intmat.shape(A, ncols)
    b = [int(x) for x in b]
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    if n == 0:
        return AffineLattice((), ()) if not any(b) else EMPTY
    if m == 0:
        return AffineLattice((0,) * n, tuple(tuple(r) for r in intmat.identity(n)))
    S, U, V = intmat.snf(A, n)
    c = intmat.matvec(U, b)
    d = intmat.snf_diagonal(S)
    k = sum(1 for x in d if x)
    y = [0] * n
    for i in range(k):
        if c[i] % d[i]:
            return EMPTY
        y[i] = c[i] // d[i]
    if any(c[i] for i in range(k, m)):
        return EMPTY
    x0 = intmat.matvec(V, y)
    free = [[V[r][j] for r in range(n)] for j in range(k, n)]
    basis = intmat.lattice_hnf(free, n)
    x0 = intmat.reduce_vector(basis, x0)
    return AffineLattice(tuple(x0), tuple(tuple(v) for v in basis))


def lattice_intersect(L1: Sequence[Sequence[int]], L2: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Basis (HNF rows) of the intersection of two lattices given by
    generating rows.  Uses the stacked kernel construction
    ``[[L1, L1], [L2, 0]]``: rows with vanishing left half carry the
    intersection in their right half."""
    rows = [list(v) + list(v) for v in L1] + [list(v) + [0] * dim for v in L2]
    if not rows:
        return []
    H, _ = intmat.hnf(rows, 2 * dim)
    inter = [r[dim:] for r in H if not any(r[:dim]) and any(r[dim:])]
    return intmat.lattice_hnf(inter, dim)


@dataclass(frozen=True)
class CongruenceBox:
    """Coset ``residue + L`` of a full-rank sublattice ``L`` of Z^r.

    Stored canonically: basis in HNF, residue reduced modulo it."""

    residue: tuple
    basis: tuple

    def __post_init__(self):
        r = len(self.residue)
        basis = intmat.lattice_hnf([list(b) for b in self.basis], r)
        if len(basis) != r:
            raise ValueError("congruence box needs a full-rank sublattice")
        res = intmat.reduce_vector(basis, [int(x) for x in self.residue])
        object.__setattr__(self, "basis", tuple(tuple(v) for v in basis))
        object.__setattr__(self, "residue", tuple(res))

    @classmethod
    def mod(cls, residue: Sequence[int], moduli: Sequence[int]) -> CongruenceBox:
        """Coordinatewise box ``x_i == residue_i (mod moduli_i)``."""
        r = len(moduli)
        return cls(tuple(residue), tuple(tuple(m if i == j else 0 for j in range(r))
                                         for i, m in enumerate(moduli)))

    @property
    def rank(self) -> int:
        return len(self.residue)

    def index(self) -> int:
        return abs(intmat.det([list(v) for v in self.basis]))

    def contains(self, x: Sequence[int]) -> bool:
        return intmat.in_lattice([list(v) for v in self.basis],
                                 [a - b for a, b in zip(x, self.residue)])


def avoid_affine_subsets(params: AffineLattice | int, excluded: Sequence[tuple]) -> tuple:
    """Integer parameter point outside every excluded affine subset.

    Each excluded subset is ``{z : A z = b}`` with ``A`` nonzero (so the set
    lies in a hyperplane).  Walks the moment curve ``(t, t^2, ..., t^s)``; a
    hyperplane meets it in at most ``s`` points, so at most
    ``len(excluded) * s + 1`` steps are needed.
    """
    s = params.params if isinstance(params, AffineLattice) else int(params)
    checks = []
    for A, b in excluded:
        if intmat.is_zero(A):
            if not any(b):
                raise ValueError("excluded subset is the whole parameter space")
            continue
        checks.append((A, list(b)))
    limit = len(checks) * s + 1
    for t in range(limit + 1):
        z = [t ** (i + 1) for i in range(s)]
        if all(intmat.matvec(A, z) != b for A, b in checks):
            return tuple(z)
    raise AssertionError("moment curve bound violated")  # unreachable


@dataclass
class LinearForm:
    """``sum_v coeffs[v] @ x_v + const`` over Z^r; coeffs are r x r matrices."""

    coeffs: dict
    const: list


def _add_matrix(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def linear_form(terms, const, r: int) -> LinearForm:
    """Accumulate ``(variable, matrix)`` terms into a LinearForm."""
    coeffs: dict = {}
    for v, M in terms:
        coeffs[v] = _add_matrix(coeffs[v], M) if v in coeffs else [row[:] for row in M]
    return LinearForm(coeffs, list(const) if const is not None else [0] * r)


def solve_abelian(rank: int, variables: Sequence[str], equations: Sequence[LinearForm],
                  disequations: Sequence[LinearForm] = (),
                  constraints: Mapping[str, Sequence[CongruenceBox | None]] | None = None,
                  ctx: SolverContext | None = None) -> Verdict:
    """Decide a twisted linear system with disequations and congruence boxes
    over Z^rank.  Never UNKNOWN."""
    r = rank
    variables = sorted(variables)
    constraints = constraints or {}
    constrained = [v for v in variables if v in constraints
                   and not any(b is None for b in constraints[v])]
    choices = [list(constraints[v]) for v in constrained]

    def branches():
        for choice in itertools.product(*choices):
            if ctx is not None:
                ctx.tick()
            yield _solve_branch(r, variables, equations, disequations, dict(zip(constrained, choice)))

    return combine_verdicts(branches())


def _solve_branch(r, variables, equations, disequations, boxes) -> Verdict:
    slot = {v: i * r for i, v in enumerate(variables)}
    nvar = len(variables) * r
    aux = {v: nvar + k * r for k, v in enumerate(sorted(boxes))}
    ncols = nvar + len(boxes) * r

    def row_block(form: LinearForm):
        rows = [[0] * ncols for _ in range(r)]
        for v, M in form.coeffs.items():
            s = slot[v]
            for i in range(r):
                for j in range(r):
                    rows[i][s + j] += M[i][j]
        return rows

    A, b = [], []
    for form in equations:
        A.extend(row_block(form))
        b.extend(-c for c in form.const)
    for v, box in sorted(boxes.items()):
        # x_v - sum_i a_i basis_i = residue
        for i in range(r):
            row = [0] * ncols
            row[slot[v] + i] = 1
            for k, bvec in enumerate(box.basis):
                row[aux[v] + k] = -bvec[i]
            A.append(row)
            b.append(box.residue[i])
    fam = solve_diophantine(A, b, ncols)
    if fam is EMPTY:
        return unsat()
    excluded = []
    M = fam.matrix()
    for form in disequations:
        D = row_block(form)
        offset = [x + c for x, c in zip(intmat.matvec(D, fam.basepoint), form.const)]
        DM = intmat.matmul(D, M, ncols, fam.params)
        if intmat.is_zero(DM):
            if not any(offset):
                return unsat()
            continue
        excluded.append((DM, [-x for x in offset]))
    z = avoid_affine_subsets(fam, excluded)
    x = fam.point(z)
    return sat({v: tuple(x[slot[v]:slot[v] + r]) for v in variables})
