"""Shared test fixtures: finite composite structures, random systems and the
flattened-table oracle."""

from __future__ import annotations

import random

from grpeq.combinators import (DirectProduct, ExtBox, Extension, Finite, FiniteAuto, FiniteBox,
                               FuncAuto, ProductBox, RecSet, build_wreath)
from grpeq.core import Const, EqWord, Occurrence, System, check_witness
from grpeq import permfin
from grpeq.permfin import Perm, closure, from_table
from grpeq.zoo import cyclic, dihedral, make_swap_product, quaternion, symmetric

# filled in by conftest.py and test_acceptance.py
WITNESS_AUDIT = {"checked": 0, "violations": 0}
ACCEPTANCE: list[str] = []


def c4_as_extension() -> Extension:
    """C4 as a non-split extension of C2 by C2 (t^2 = a)."""
    C2 = cyclic(2)
    a = C2.labels["a"]
    return Extension(C2, closure([Perm((1, 0))]), [None, None], {(1, 1): a})


def s3_as_extension() -> Extension:
    C3 = cyclic(3)
    inv = FiniteAuto(tuple(C3.inv(x) for x in range(3)))
    return Extension(C3, closure([Perm((1, 0))]), [None, inv])


def d6_as_extension() -> Extension:
    C6 = cyclic(6)
    inv = FiniteAuto(tuple(C6.inv(x) for x in range(6)))
    return Extension(C6, closure([Perm((1, 0))]), [None, inv])


def finite_structures() -> dict:
    c2, c6, s3, d4, q8 = cyclic(2), cyclic(6), symmetric(3), dihedral(4), quaternion()
    s3_on_3 = closure([Perm((1, 2, 0)), Perm((1, 0, 2))])
    return {
        "C2": c2, "C6": c6, "S3": s3, "D4": d4, "Q8": q8,
        "C2xS3": DirectProduct([c2, s3]),
        "C2xQ8": DirectProduct([c2, q8]),
        "C2^3": DirectProduct([c2, c2, c2]),
        "S3xS3": DirectProduct([s3, s3]),
        "C6xD4": DirectProduct([c6, d4]),
        "SwapProd(C2)": make_swap_product(c2),
        "SwapProd(C2xC2)": make_swap_product(DirectProduct([c2, c2])),
        "C4ext": c4_as_extension(),
        "S3ext": s3_as_extension(),
        "D6ext": d6_as_extension(),
        "C2wrC2": build_wreath(c2, closure([Perm((1, 0))])),
        "C2wrS3": build_wreath(c2, s3_on_3),
        "S3wrC2": None,  # order 72, excluded
        "C4ext wr C2": build_wreath(c4_as_extension(), closure([Perm((1, 0))])),
        "C2 x SwapProd(C2)": DirectProduct([c2, make_swap_product(c2)]),
        "S3ext x C2": DirectProduct([s3_as_extension(), c2]),
    }


def composite_structures() -> dict:
    return {k: v for k, v in finite_structures().items() if v is not None}


# --------------------------------------------------------------------------
# random data


def random_box(G, rng: random.Random):
    if isinstance(G, Finite):
        n = G.order()
        return FiniteBox(frozenset(x for x in range(n) if rng.random() < 0.6))
    if isinstance(G, DirectProduct):
        return ProductBox(tuple(random_box(F, rng) if rng.random() < 0.6 else None
                                for F in G.factors))
    if isinstance(G, Extension):
        return ExtBox(rng.randrange(G.quotient.order),
                      random_box(G.base, rng) if rng.random() < 0.6 else None)
    raise TypeError(type(G))


def random_recset(G, rng: random.Random) -> RecSet:
    return RecSet(tuple(random_box(G, rng) for _ in range(rng.randint(1, 2))))


def inner_auto(G, g):
    gi = G.inv(g)
    return G.normalize_auto(FuncAuto(lambda x: G.mul(G.mul(g, x), gi)))


def random_word(G, variables, rng, length, twists=()):
    toks = []
    for _ in range(length):
        if rng.random() < 0.45:
            toks.append(Const(G.random_value(rng)))
        else:
            tw = rng.choice(twists) if twists and rng.random() < 0.3 else None
            toks.append(Occurrence(rng.choice(variables), rng.choice([1, -1]), tw))
    return EqWord(tuple(toks))


def random_system(G, rng: random.Random, twisted: bool = False, constrained: bool = True,
                  max_vars: int = 3, max_len: int = 8) -> System:
    nv = rng.randint(1, max_vars)
    variables = ["X", "Y", "Z"][:nv]
    twists = [inner_auto(G, G.random_value(rng)) for _ in range(2)] if twisted else []
    eqs = [random_word(G, variables, rng, rng.randint(1, max_len), twists)
           for _ in range(rng.randint(0, 2))]
    ineqs = [random_word(G, variables, rng, rng.randint(1, max_len), twists)
             for _ in range(rng.randint(0, 2))]
    cons = {}
    if constrained:
        for v in variables:
            if rng.random() < 0.4:
                cons[v] = random_recset(G, rng)
    return System(variables, eqs, ineqs, cons)


# --------------------------------------------------------------------------
# oracles


class FlatTable:
    """The whole finite structure as one multiplication table."""

    def __init__(self, G):
        self.G = G
        self.elements = G.elements()
        self.index = {x: i for i, x in enumerate(self.elements)}
        table = [[self.index[G.mul(a, b)] for b in self.elements] for a in self.elements]
        self.group = from_table(table)

    def translate(self, system: System) -> System:
        G = self.G

        def tok(t):
            if isinstance(t, Const):
                return Const(self.index[t.value])
            if t.twist is None:
                return t
            return Occurrence(t.variable, t.exponent,
                              FiniteAuto(tuple(self.index[t.twist(x)] for x in self.elements)))

        def word(w):
            return EqWord(tuple(tok(t) for t in w))

        cons = {v: RecSet((FiniteBox(frozenset(i for i, x in enumerate(self.elements)
                                               if G.member(x, rec))),))
                for v, rec in system.constraints.items()}
        return System(system.variables, [word(w) for w in system.equations],
                      [word(w) for w in system.inequations], cons)

    def solve(self, system: System):
        return permfin.solve_finite(self.group, self.translate(system))


def brute_force(G, system: System):
    """Pure enumeration with the independent checker (small groups only)."""
    import itertools
    elems = G.elements()
    for combo in itertools.product(elems, repeat=len(system.variables)):
        a = dict(zip(system.variables, combo))
        if check_witness(system, a, G):
            return a
    return None


# --------------------------------------------------------------------------
# lattice data


def random_matrix(rng: random.Random, max_dim: int = 5, lo: int = -9, hi: int = 9):
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def sympy_det(A) -> int:
    import sympy
    return int(sympy.Matrix(A).det()) if A else 1


def sympy_snf_diagonal(A) -> list[int]:
    import sympy
    from sympy.matrices.normalforms import smith_normal_form
    S = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape))]


def box_brute_force(forms, diseqs, boxes, variables, r, radius=20):
    """First point of [-radius, radius]^(r*len(variables)) satisfying the
    linear system, or None.  Vectorised over the last coordinates."""
    import itertools

    import numpy as np

    variables = sorted(variables)
    d = r * len(variables)
    span = np.arange(-radius, radius + 1, dtype=np.int64)
    inner = min(d, 3)
    grid = np.stack(np.meshgrid(*([span] * inner), indexing="ij"), -1).reshape(-1, inner)
    slot = {v: i * r for i, v in enumerate(variables)}

    def lin(form, X):
        out = np.tile(np.array(form.const, dtype=np.int64), (len(X), 1))
        for v, M in form.coeffs.items():
            out += X[:, slot[v]:slot[v] + r] @ np.array(M, dtype=np.int64).T
        return out

    for head in itertools.product(range(-radius, radius + 1), repeat=d - inner):
        X = np.hstack([np.tile(np.array(head, dtype=np.int64), (len(grid), 1)), grid])
        ok = np.ones(len(X), dtype=bool)
        for f in forms:
            ok &= ~lin(f, X).any(axis=1)
        for f in diseqs:
            ok &= lin(f, X).any(axis=1)
        for v, box in boxes.items():
            if box is None:
                continue
            B = np.array(box.basis, dtype=np.int64)  # rows
            diff = X[:, slot[v]:slot[v] + r] - np.array(box.residue, dtype=np.int64)
            # B is square and nonsingular: solve diff = y B with integer y
            import numpy.linalg as la
            y = diff @ la.inv(B.astype(float))
            ok &= (np.abs(y - np.round(y)) < 1e-6).all(axis=1)
        hit = np.flatnonzero(ok)
        if len(hit):
            x = X[hit[0]]
            return {v: tuple(int(t) for t in x[slot[v]:slot[v] + r]) for v in variables}
    return None


def random_abelian_instance(rng: random.Random, max_total_dim: int = 4):
    """Random twisted linear system over Z^r, about half of them planted."""
    from grpeq.lattice import CongruenceBox, linear_form

    r = rng.randint(1, 4)
    nv = rng.randint(1, max(1, max_total_dim // r))
    variables = ["X", "Y", "Z"][:nv]
    planted = {v: [rng.randint(-6, 6) for _ in range(r)] for v in variables}
    plant = rng.random() < 0.5

    def mat():
        return [[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)]

    def form(exact):
        terms = [(v, mat()) for v in variables if rng.random() < 0.8]
        const = [rng.randint(-8, 8) for _ in range(r)]
        if exact:
            val = [0] * r
            for v, M in terms:
                val = [a + sum(M[i][j] * planted[v][j] for j in range(r)) for i, a in enumerate(val)]
            const = [-x for x in val]
        return linear_form(terms, const, r)

    eqs = [form(plant) for _ in range(rng.randint(1, 2))]
    diseqs = [form(False) for _ in range(rng.randint(0, 2))]
    boxes = {}
    for v in variables:
        if rng.random() < 0.3:
            mods = [rng.randint(1, 3) for _ in range(r)]
            res = planted[v] if plant else [rng.randint(0, 2) for _ in range(r)]
            boxes[v] = CongruenceBox.mod(res, mods)
    return r, variables, eqs, diseqs, boxes


def eval_forms(forms, assignment, r):
    out = []
    for f in forms:
        val = list(f.const)
        for v, M in f.coeffs.items():
            x = assignment[v]
            val = [a + sum(M[i][j] * x[j] for j in range(r)) for i, a in enumerate(val)]
        out.append(val)
    return out


def _sign(images) -> int:
    seen, sign = set(), 1
    for i in range(len(images)):
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = images[j]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


def random_action(rng: random.Random, qname: str, r: int):
    """Integral action of C2, C3 or S3 on Z^r: a direct sum of small
    representations conjugated by a random unimodular matrix."""
    from grpeq.lattice import ZGModuleAction
    from grpeq.lattice import intmat

    if qname == "C2":
        G = closure([Perm((1, 0))])
    elif qname == "C3":
        G = closure([Perm((1, 2, 0))])
    else:
        G = closure([Perm((1, 2, 0)), Perm((1, 0, 2))])
    deg = len(G.elements[0].images)
    pieces = []
    dims = 0
    while dims < r:
        kind = rng.choice(["triv", "sign", "perm", "std"])
        k = {"triv": 1, "sign": 1, "perm": deg, "std": deg - 1}[kind]
        if dims + k > r:
            kind, k = "triv", 1
        pieces.append(kind)
        dims += k

    def block(kind, g):
        p = G.elements[g]
        n = deg
        P = [[int(p.images[j] == i) for j in range(n)] for i in range(n)]
        if kind == "triv":
            return [[1]]
        if kind == "sign":
            return [[_sign(p.images)]]
        if kind == "perm":
            return P
        # standard: the sum-zero sublattice with basis e_i - e_n
        B = [[int(i == j) - int(i == n - 1) for j in range(n - 1)] for i in range(n)]
        PB = intmat.matmul(P, B)
        # coordinates in the basis e_i - e_n: drop the last row
        return [row[:] for row in PB[:n - 1]]

    def direct_sum(blocks):
        M = [[0] * r for _ in range(r)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, x in enumerate(row):
                    M[off + i][off + j] = x
            off += len(b)
        return M

    C = intmat.identity(r)
    for _ in range(3):
        i, j = rng.sample(range(r), 2) if r > 1 else (0, 0)
        if i != j:
            t = rng.randint(-2, 2)
            C = [[C[a][b] + (t * C[j][b] if a == i else 0) for b in range(r)] for a in range(r)]
    Cinv = [[int(x) for x in row] for row in intmat.frac_inverse(C)]
    mats = [intmat.matmul(intmat.matmul(C, direct_sum([block(k, g) for k in pieces])), Cinv)
            for g in range(G.order)]
    return ZGModuleAction(G, mats)


def random_invariant_sublattice(rng: random.Random, action):
    """Lattice generated by the orbit of a few random vectors."""
    from grpeq.lattice import intmat

    r = action.rank
    seeds = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(rng.randint(0, 2))]
    if rng.random() < 0.5 and seeds:
        # fixed vectors: orbit sums
        seeds = [[sum(col) for col in zip(*(action.act(q, v) for q in range(action.group.order)))]
                 for v in seeds]
    rows = [action.act(q, v) for v in seeds for q in range(action.group.order)]
    return intmat.lattice_hnf(rows, r)


# --------------------------------------------------------------------------
# free groups


def reduced_words(rank: int, length: int) -> list[tuple]:
    """Reduced words up to the given length, built independently of the
    library and sorted length-lex (a < a^-1 < b < b^-1 ...)."""
    out = {()}
    frontier = [()]
    letters = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for x in letters:
                if not w or w[-1] != -x:
                    nxt.append(w + (x,))
        out.update(nxt)
        frontier = nxt
    return sorted(out, key=lambda w: (len(w), [(abs(x), x < 0) for x in w]))


def free_oracle(G, system: System, bound: int):
    """All assignments with words of length <= bound, ordered by (max
    length, length-lex per variable); first one passing check_witness."""
    import itertools
    words = reduced_words(G.rank, bound)
    variables = list(system.variables)
    best = None
    rank_of = {w: i for i, w in enumerate(words)}
    for combo in itertools.product(words, repeat=len(variables)):
        a = dict(zip(variables, combo))
        if check_witness(system, a, G):
            key = (max((len(w) for w in combo), default=0), [rank_of[w] for w in combo])
            if best is None or key < best[0]:
                best = (key, a)
    return None if best is None else best[1]


def random_free_system(G, rng: random.Random, max_vars: int = 2) -> System:
    nv = rng.randint(1, max_vars)
    variables = ["X", "Y", "Z"][:nv]

    def w():
        toks = []
        for _ in range(rng.randint(1, 5)):
            if rng.random() < 0.4:
                toks.append(Const(G.random_value(rng)[:2]))
            else:
                toks.append(Occurrence(rng.choice(variables), rng.choice([1, -1])))
        return EqWord(tuple(toks))
    eqs = [w() for _ in range(rng.randint(1, 2))]
    ineqs = [w() for _ in range(rng.randint(0, 1))]
    return System(variables, eqs, ineqs)
