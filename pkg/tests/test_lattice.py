from __future__ import annotations

import random
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from grpeq.core import SolverContext
from grpeq.lattice import (CongruenceBox, NotInvariantError, ZGModuleAction, avoid_affine_subsets,
                           det, direct_sum_index, hnf, is_hnf, is_snf, kernel, lattice_intersect,
                           linear_form, maschke_complement, snf, solve_abelian, solve_diophantine)
from grpeq.lattice import intmat
from grpeq.permfin import Perm, closure

from helpers import (box_brute_force, eval_forms, random_abelian_instance, random_action,
                     random_invariant_sublattice, sympy_det, sympy_snf_diagonal)

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def test_hnf_example():
    H, U = hnf([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert intmat.matmul(U, [[2, 4], [1, 3]]) == H


def test_snf_example():
    S, U, V = snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [S[i][i] for i in range(3)] == [2, 6, 12]


def test_diophantine_example():
    fam = solve_diophantine([[1, 1]], [1])
    assert fam is not None and fam.params == 1
    # the basepoint is some solution of x + y = 1
    assert sum(fam.basepoint) == 1
    assert all(sum(fam.point([t])) == 1 for t in range(-5, 6))
    assert solve_diophantine([[2, 4]], [3]) is None


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_hnf_properties(A):
    H, U = hnf(A)
    assert H == intmat.matmul(U, A)
    assert abs(sympy_det(U)) == 1
    assert is_hnf(H)


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_snf_properties(A):
    S, U, V = snf(A)
    assert S == intmat.matmul(intmat.matmul(U, A), V)
    assert abs(sympy_det(U)) == 1 and abs(sympy_det(V)) == 1
    assert is_snf(S)
    assert [S[i][i] for i in range(min(len(S), len(S[0])))] == sympy_snf_diagonal(A)


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_hnf_is_canonical(A):
    rng = random.Random(len(A) * 31 + sum(map(sum, A)))
    # left multiply by a random unimodular matrix
    m = len(A)
    U = intmat.identity(m)
    for _ in range(4):
        i, j = rng.randrange(m), rng.randrange(m)
        if i != j:
            t = rng.randint(-3, 3)
            U[i] = [a + t * b for a, b in zip(U[i], U[j])]
    assert hnf(intmat.matmul(U, A))[0] == hnf(A)[0]


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(A):
    assert det(A) == sympy_det(A)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_kernel_is_saturated_basis(A):
    n = len(A[0])
    K = kernel(A)
    for v in K:
        assert not any(intmat.matvec(A, v))
    assert len(K) == n - intmat.rank(A)
    if K:
        # saturation: the gcd of maximal minors of K is 1
        assert sympy_snf_diagonal(K) == [1] * len(K)


def test_lattice_intersect():
    L = lattice_intersect([[2, 0], [0, 3]], [[3, 0], [0, 2]], 2)
    assert L == [[6, 0], [0, 6]]


def test_congruence_box_canonical():
    b1 = CongruenceBox((5, -1), ((2, 0), (0, 3)))
    b2 = CongruenceBox.mod([1, 2], [2, 3])
    assert b1 == b2
    assert b1.index() == 6
    assert b1.contains((3, 5)) and not b1.contains((2, 5))
    with pytest.raises(ValueError):
        CongruenceBox((0, 0), ((1, 0),))


def test_avoid_affine_subsets_moment_curve():
    # z avoids the lines z1 = 0 and z1 = z2
    z = avoid_affine_subsets(2, [([[1, 0]], [0]), ([[1, -1]], [0])])
    assert z[0] != 0 and z[0] != z[1]
    with pytest.raises(ValueError):
        avoid_affine_subsets(1, [([[0]], [0])])


def test_solve_abelian_examples():
    r = 1
    ident = [[1]]
    # 2x = 3 has no integer solution
    eq = linear_form([("X", [[2]])], [-3], r)
    v = solve_abelian(1, ["X"], [eq])
    assert v.is_unsat
    # 2x = 4 with x != 2 is UNSAT; with x != 3 is SAT
    eq = linear_form([("X", [[2]])], [-4], r)
    assert solve_abelian(1, ["X"], [eq], [linear_form([("X", ident)], [-2], r)]).is_unsat
    v = solve_abelian(1, ["X"], [eq], [linear_form([("X", ident)], [-3], r)])
    assert v.assignment == {"X": (2,)}


def test_solve_abelian_congruence_union():
    r = 1
    # x even or x == 1 mod 3, with x != 0, x != 1
    boxes = [CongruenceBox.mod([0], [2]), CongruenceBox.mod([1], [3])]
    ident = [[1]]
    dis = [linear_form([("X", ident)], [0], r), linear_form([("X", ident)], [-1], r)]
    v = solve_abelian(1, ["X"], [], dis, {"X": boxes})
    x = v.assignment["X"][0]
    assert x not in (0, 1) and (x % 2 == 0 or x % 3 == 1)


def test_solve_abelian_ticks_budget():
    ctx = SolverContext(branch_budget=1)
    boxes = [CongruenceBox.mod([i], [5]) for i in range(5)]
    eq = linear_form([("X", [[1]])], [-4], 1)
    with pytest.raises(Exception):
        solve_abelian(1, ["X"], [eq], (), {"X": boxes}, ctx)


def test_solve_abelian_against_box_brute_force():
    rng = random.Random(11)
    n_sat = 0
    for _ in range(25):
        r, variables, eqs, diseqs, boxes = random_abelian_instance(rng, max_total_dim=3)
        v = solve_abelian(r, variables, eqs, diseqs, {k: [b] for k, b in boxes.items()})
        bf = box_brute_force(eqs, diseqs, boxes, variables, r, radius=10)
        if bf is not None:
            assert v.is_sat
        if v.is_sat:
            n_sat += 1
            a = v.assignment
            assert all(not any(x) for x in eval_forms(eqs, a, r))
            assert all(any(x) for x in eval_forms(diseqs, a, r))
            assert all(b.contains(a[k]) for k, b in boxes.items())
    assert n_sat > 0


def test_maschke_swap_action():
    G = closure([Perm((1, 0))])
    act = ZGModuleAction(G, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    W = [[1, 1]]
    U = maschke_complement(act, W)
    assert U == [[1, -1]]
    assert direct_sum_index(U, W, 2) == 2


def test_maschke_rejects_non_invariant():
    G = closure([Perm((1, 0))])
    act = ZGModuleAction(G, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    with pytest.raises(NotInvariantError):
        maschke_complement(act, [[1, 0]])


def test_zg_action_rejects_non_homomorphism():
    G = closure([Perm((1, 2, 0))])
    with pytest.raises(ValueError):
        ZGModuleAction(G, [[[1]], [[-1]], [[1]]])


def test_maschke_random_actions():
    rng = random.Random(5)
    for _ in range(20):
        q = rng.choice(["C2", "C3", "S3"])
        act = random_action(rng, q, rng.randint(1, 4))
        W = random_invariant_sublattice(rng, act)
        U = maschke_complement(act, W)
        assert act.is_invariant(U)
        r = act.rank
        assert len(U) + len(W) == r
        idx = direct_sum_index(U, W, r)
        assert idx is not None and idx >= 1
        assert idx == prod(sympy_snf_diagonal(U + W))


def test_normal_form_examples():
    assert hnf([[1, 0], [0, 1]]) == ([[1, 0], [0, 1]], [[1, 0], [0, 1]])
    assert hnf([[0, 0], [0, 0]]) == ([[0, 0], [0, 0]], [[1, 0], [0, 1]])
    assert snf([[2, 0], [0, 3]])[0] == [[1, 0], [0, 6]]
    assert snf([[2, 4], [1, 1]])[0] == [[1, 0], [0, 2]]
    assert snf([[0, 0], [0, 0]])[0] == [[0, 0], [0, 0]]


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_hnf_preserves_row_space(A):
    import sympy
    H, U = hnf(A)
    # H = U A puts rows of H in the row lattice of A; an integral inverse of U
    # gives the converse inclusion
    Uinv = sympy.Matrix(U).inv()
    assert all(x.is_integer for x in Uinv)
    assert (Uinv * sympy.Matrix(H)).tolist() == A


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=m, max_size=m))))
@settings(max_examples=80, deadline=None)
def test_snf_product_is_gcd_of_maximal_minors(A):
    import itertools
    from math import gcd
    S, _, _ = snf(A)
    d = [x for x in (S[i][i] for i in range(min(len(S), len(S[0])))) if x]
    k = len(d)
    if k == 0:
        return
    g = 0
    for rows in itertools.combinations(range(len(A)), k):
        for cols in itertools.combinations(range(len(A[0])), k):
            g = gcd(g, sympy_det([[A[i][j] for j in cols] for i in rows]))
    assert prod(d) == g


def test_avoid_affine_subsets_examples():
    assert avoid_affine_subsets(1, [([[1]], [0])]) == (1,)
    assert avoid_affine_subsets(2, [([[1, 0]], [0]), ([[0, 1]], [0])]) == (1, 1)
    assert avoid_affine_subsets(1, [([[1]], [0]), ([[1]], [1]), ([[1]], [2])]) == (3,)


def test_diophantine_trivial_cases():
    fam = solve_diophantine([[0]], [0])
    assert fam.params == 1
    assert solve_diophantine([[2]], [1]) is None


def test_diophantine_samples_and_empty_certificates():
    rng = random.Random(13)
    empties = 0
    for _ in range(60):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-6, 6) for _ in range(m)]
        fam = solve_diophantine(A, b)
        if fam is None:
            empties += 1
            S, U, V = snf(A)
            c = intmat.matvec(U, b)
            d = [S[i][i] if i < n else 0 for i in range(m)]
            assert any((di == 0 and ci) or (di and ci % di) for ci, di in zip(c, d))
        else:
            for _ in range(5):
                z = [rng.randint(-4, 4) for _ in range(fam.params)]
                assert intmat.matvec(A, fam.point(z)) == b
    assert empties > 0


def test_solve_abelian_spec_examples():
    ident = [[1]]
    v = solve_abelian(1, ["X"], [], [linear_form([("X", ident)], [0], 1)],
                      {"X": [CongruenceBox.mod([0], [2])]})
    assert v.assignment == {"X": (2,)}
    I2 = [[1, 0], [0, 1]]
    # x + y = 0 and x - y = 1 over Z (as the two coordinates of one Z^2 unknown)
    eq = linear_form([("X", [[1, 1], [1, -1]])], [0, -1], 2)
    assert solve_abelian(2, ["X"], [eq]).is_unsat
    sigma = [[0, 1], [1, 0]]
    eq = linear_form([("X", I2), ("X", sigma)], [-3, -3], 2)
    v = solve_abelian(2, ["X"], [eq])
    x = v.assignment["X"]
    assert x[0] + x[1] == 3


def test_maschke_trivial_cases():
    G = closure([Perm((0,))])
    act = ZGModuleAction(G, [[[1]]])
    assert maschke_complement(act, [[2]]) == []
    assert direct_sum_index([], [[2]], 1) == 2
    C2 = closure([Perm((1, 0))])
    act = ZGModuleAction(C2, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    assert maschke_complement(act, []) == [[1, 0], [0, 1]]
