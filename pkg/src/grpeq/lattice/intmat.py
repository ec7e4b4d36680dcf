"""Exact integer matrices as lists of rows of Python ints.

Hermite and Smith normal forms with unimodular transforms, kernels,
determinants and lattice reduction.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list  # list[list[int]]


def mat(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in r] for r in rows]


def shape(A: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not A:
        return 0, (cols or 0)
    return len(A), len(A[0])


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    m, n = shape(A, cols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    m = len(A)
    k = len(B) if B else (inner or 0)
    n = len(B[0]) if B else (cols or 0)
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(n)] for i in range(m)]


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for r in A for x in r)


def det(A: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _row_sub(A: Matrix, i: int, j: int, q: int) -> None:
    """row_i -= q * row_j"""
    if q:
        ri, rj = A[i], A[j]
        for c in range(len(ri)):
            ri[c] -= q * rj[c]


def _col_sub(A: Matrix, i: int, j: int, q: int) -> None:
    """col_i -= q * col_j"""
    if q:
        for r in A:
            r[i] -= q * r[j]


def hnf(A: Matrix, cols: int | None = None) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ A``, ``U`` unimodular, pivots positive,
    entries above each pivot reduced into ``[0, pivot)``, zero rows last.
    """
    m, n = shape(A, cols)
    H = [r[:] for r in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                H[p], H[r] = H[r], H[p]
                U[p], U[r] = U[r], U[p]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_sub(H, i, r, q)
                    _row_sub(U, i, r, q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            _row_sub(H, i, r, q)
            _row_sub(U, i, r, q)
        r += 1
    return H, U


def is_hnf(H: Matrix) -> bool:
    last_pivot = -1
    seen_zero = False
    pivots = []
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last_pivot or row[p] <= 0:
            return False
        pivots.append((i, p))
        last_pivot = p
    for i, p in pivots:
        for k in range(i):
            if not 0 <= H[k][p] < H[i][p]:
                return False
    return True


def snf(A: Matrix, cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(S, U, V)`` with ``S == U @ A @ V``."""
    m, n = shape(A, cols)
    S = [r[:] for r in A]
    U = identity(m)
    V = identity(n)
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return S, U, V
            i, j = best
            if i != t:
                S[i], S[t] = S[t], S[i]
                U[i], U[t] = U[t], U[i]
            if j != t:
                for row in S:
                    row[j], row[t] = row[t], row[j]
                for row in V:
                    row[j], row[t] = row[t], row[j]
            p = S[t][t]
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    _row_sub(S, i, t, q)
                    _row_sub(U, i, t, q)
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    _col_sub(S, j, t, q)
                    _col_sub(V, j, t, q)
                    if S[t][j]:
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row into the pivot row and re-reduce
            _row_sub(S, t, bad[0], -1)
            _row_sub(U, t, bad[0], -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return S, U, V


def snf_diagonal(S: Matrix) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def is_snf(S: Matrix) -> bool:
    m, n = shape(S)
    for i in range(m):
        for j in range(n):
            if i != j and S[i][j]:
                return False
    d = snf_diagonal(S)
    if any(x < 0 for x in d):
        return False
    for a, b in zip(d, d[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


def rank(A: Matrix, cols: int | None = None) -> int:
    H, _ = hnf(A, cols)
    return sum(1 for r in H if any(r))


def kernel(A: Matrix, cols: int | None = None) -> Matrix:
    """Basis (rows) of the integer kernel ``{x : A x = 0}``; saturated."""
    m, n = shape(A, cols)
    At = transpose(A, n) if m else [[] for _ in range(n)]
    H, U = hnf(At, m)
    return [U[i] for i in range(n) if not any(H[i])]


def lattice_hnf(rows: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    if not rows:
        return []
    H, _ = hnf(mat(rows), dim)
    return [r for r in H if any(r)]


def reduce_vector(basis_hnf: Matrix, v: Sequence[int]) -> list[int]:
    """Reduce ``v`` modulo a lattice in HNF: at each pivot column the entry is
    brought into ``[0, pivot)``.  The result is a canonical coset
    representative; it is zero iff ``v`` lies in the lattice."""
    x = list(v)
    for row in basis_hnf:
        c = next(j for j, a in enumerate(row) if a)
        q = x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x


def in_lattice(basis_hnf: Matrix, v: Sequence[int]) -> bool:
    return not any(reduce_vector(basis_hnf, v))


def frac_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return 0
    n = len(M[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def frac_inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    M = [list(map(Fraction, A[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


def lcm_denominators(rows) -> int:
    out = 1
    for r in rows:
        for x in r:
            d = Fraction(x).denominator
            out = out * d // gcd(out, d)
    return out
