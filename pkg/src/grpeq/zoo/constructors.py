"""Ready-made structured groups."""

from __future__ import annotations

from typing import Iterable, Mapping

from ..permfin import FiniteGroup, Perm, closure
from ..combinators import (DirectProduct, Extension, Finite, Free, FreeAbelian, FreeAuto,
                           MatrixAuto, ProductAuto, build_wreath)


def _perm(p) -> Perm:
    return p if isinstance(p, Perm) else Perm.from_one_based(p)


def make_finite_from_perms(gens: Iterable, labels: Mapping[str, object] | None = None) -> Finite:
    """Finite group generated by permutations (1-based image lists or Perm).

    Generators of smaller degree are extended by fixed points.  Without
    explicit labels the generators are labelled ``g1, g2, ...`` in sorted
    order."""
    raw = [_perm(g) for g in gens]
    labels = None if labels is None else {k: _perm(p) for k, p in labels.items()}
    n = max([p.degree for p in raw] + [p.degree for p in (labels or {}).values()] + [1])
    perms = sorted({_pad(p, n) for p in raw})
    G = Finite(closure(perms, degree=n))
    if labels is None:
        labels = {f"g{i + 1}": p for i, p in enumerate(perms)}
    for name, p in labels.items():
        G.labels[name] = G.group.index_of(_pad(p, n))
    return G


def _pad(p: Perm, n: int) -> Perm:
    """Extend by fixed points to degree ``n``."""
    return p if p.degree == n else Perm(tuple(p.images) + tuple(range(p.degree, n)))


def cyclic(n: int) -> Finite:
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return make_finite_from_perms([[1]], {"e": [1]})
    gen = list(range(2, n + 1)) + [1]
    return make_finite_from_perms([gen], {"a": gen, "e": list(range(1, n + 1))})


def dihedral(n: int) -> Finite:
    """Symmetries of the regular ``n``-gon (order ``2n``), ``n >= 3``."""
    if n < 3:
        raise ValueError("need n >= 3")
    r = list(range(2, n + 1)) + [1]
    s = [1] + list(range(n, 1, -1))
    return make_finite_from_perms([r, s], {"r": r, "s": s, "e": list(range(1, n + 1))})


def symmetric(n: int) -> Finite:
    if n < 2:
        return make_finite_from_perms([[1]], {"e": [1]})
    cyc = list(range(2, n + 1)) + [1]
    tr = [2, 1] + list(range(3, n + 1))
    return make_finite_from_perms([cyc, tr], {"c": cyc, "s": tr, "e": list(range(1, n + 1))})


def quaternion() -> Finite:
    """Q8 in its left regular representation on {1, -1, i, -i, j, -j, k, -k}."""
    units = ["1", "i", "j", "k"]
    table = {  # product of basis units as (sign, unit)
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]
    pos = {x: i for i, x in enumerate(elems)}

    def left(x):
        out = []
        for s, u in elems:
            sign, w = table[(x[1], u)]
            out.append(pos[(x[0] * s * sign, w)] + 1)
        return out

    i, j = left((1, "i")), left((1, "j"))
    return make_finite_from_perms([i, j], {"i": i, "j": j, "k": left((1, "k")),
                                           "m": left((-1, "1")), "e": list(range(1, 9))})


def make_free_abelian(r: int) -> FreeAbelian:
    G = FreeAbelian(r)
    if r == 1:
        G.labels["z"] = (1,)
    else:
        for i, e in enumerate(G.generators()):
            G.labels[f"e{i + 1}"] = e
    G.labels["0"] = G.identity()
    if r >= 1:
        G.register_automorphism("neg", MatrixAuto(tuple(tuple(-int(i == j) for j in range(r))
                                                        for i in range(r))))
    return G


def make_free(rank: int, bound: int = 4) -> Free:
    G = Free(rank, bound)
    for name, g in zip(G.names, G.generators()):
        G.labels[name] = g
    return G


def _c2() -> FiniteGroup:
    return closure([Perm.from_one_based([2, 1])])


def make_dihedral_infinite() -> Extension:
    """``Z x| C2`` with the reflection acting by negation; ``z`` translates,
    ``t`` reflects."""
    G = Extension(FreeAbelian(1), _c2(), [None, MatrixAuto(((-1,),))])
    G.quotient_labels = {"e": 0, "t": 1}
    G.labels.update({"z": ((1,), 0), "t": ((0,), 1)})
    G.base.register_automorphism("neg", MatrixAuto(((-1,),)))
    G.register_automorphism("neg", lambda g: ((-g[0][0],), g[1]))
    return G


def make_dihedral_artin_even(m: int, bound: int = 4) -> Extension:
    """Dihedral Artin group of even index ``m`` as an extension of
    ``Z x F_{m/2}`` by ``C_{m/2}``.

    ``t`` (the class of ``y2``) cyclically shifts the free generators
    ``a_1 -> a_2 -> ... -> a_h -> a_1`` and ``t^h = z`` is the central
    generator.  ``y1 = a_1``.
    """
    if m < 2 or m % 2:
        raise ValueError("m must be even and at least 2")
    h = m // 2
    Q = closure([Perm(tuple((i + 1) % h for i in range(h)))], degree=h)
    gen = Perm(tuple((i + 1) % h for i in range(h)))
    power = [Q.index_of(Perm.identity(h))]
    for _ in range(h - 1):
        power.append(Q.index_of(Q.elements[power[-1]] * gen))
    exp = {q: i for i, q in enumerate(power)}
    F = Free(h, bound, [f"a{i + 1}" for i in range(h)])
    K = DirectProduct([FreeAbelian(1), F])
    action = [None] * Q.order
    for q in range(Q.order):
        i = exp[q]
        if i:
            shift = FreeAuto(tuple(((j + i) % h + 1,) for j in range(h)))
            action[q] = ProductAuto((0, 1), (None, shift))
    z = ((1,), ())
    cocycle = {(p, q): z for p in range(Q.order) for q in range(Q.order) if exp[p] + exp[q] >= h}
    G = Extension(K, Q, action, cocycle)
    G.quotient_labels = {"e": power[0]}
    if h > 1:
        G.quotient_labels["t"] = power[1]
    e = K.identity()
    G.labels["z"] = (z, power[0])
    G.labels["y1"] = (((0,), (1,)), power[0])
    G.labels["y2"] = (e, power[1]) if h > 1 else (z, power[0])
    for i in range(h):
        G.labels[f"a{i + 1}"] = (((0,), (i + 1,)), power[0])
    return G


def make_swap_product(H) -> Extension:
    """``(H x H) x| C2`` with the involution swapping the coordinates."""
    K = DirectProduct([H, H])
    G = Extension(K, _c2(), [None, ProductAuto((1, 0), (None, None))])
    G.quotient_labels = {"e": 0, "s": 1}
    G.labels["s"] = (K.identity(), 1)
    return G


def make_wreath(J, perms: Iterable) -> Extension:
    P = closure([_perm(p) for p in perms])
    W = build_wreath(J, P)
    return W
