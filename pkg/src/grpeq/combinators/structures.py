"""Compositional group structures, their automorphisms, and recognisable sets.

Values by structure:

* ``Finite``        element index (int)
* ``FreeAbelian``   tuple of ints
* ``Free``          reduced word (tuple of signed generator indices)
* ``DirectProduct`` tuple of component values
* ``Extension``     pair ``(k, q)`` denoting ``k * t_q`` with ``k`` in the base
                    and ``t_q`` the transversal element of ``q`` in the quotient

Extension law (transversal on the right)::

    t_p t_q = c(p, q) t_{pq}        alpha_q(k) = t_q k t_q^-1
    (k t_p)(k' t_q) = k alpha_p(k') c(p, q) t_{pq}

For a permutational wreath product this is exactly
``(j, pi)(k, rho) = (j_i k_{pi^-1(i)}, pi rho)``.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from ..core import GroupEqError, TwistError, WrongGroupError, apply_twist
from ..freegrp import (FiniteQuotientHom, format_word, free_inv, free_mul, free_reduce,
                       is_automorphism, parse_word, substitute)
from ..lattice import CongruenceBox, intmat
from ..permfin import FiniteGroup, Perm


class StructureError(GroupEqError):
    """A structure failed validation; the message names the violated axiom."""


# --------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class FiniteAuto:
    table: tuple
    name: str | None = field(default=None, compare=False)

    def __call__(self, x):
        return self.table[x]


@dataclass(frozen=True)
class MatrixAuto:
    matrix: tuple  # rows; acts on column vectors
    name: str | None = field(default=None, compare=False)

    def __call__(self, v):
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.matrix)


@dataclass(frozen=True)
class FreeAuto:
    images: tuple
    name: str | None = field(default=None, compare=False)

    def __call__(self, w):
        return substitute(w, self.images)


@dataclass(frozen=True)
class ProductAuto:
    """Monomial automorphism: factor ``i`` is sent to factor ``perm[i]`` via
    ``components[i]`` (None = identity map)."""

    perm: tuple
    components: tuple
    name: str | None = field(default=None, compare=False)

    def __call__(self, k):
        out = [None] * len(k)
        for i, x in enumerate(k):
            out[self.perm[i]] = apply_twist(self.components[i], x)
        return tuple(out)

    def inverse_perm(self) -> tuple:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)


@dataclass(frozen=True)
class ExtensionAuto:
    """``k t_q -> phi(k) shifts[q] t_{qmap[q]}``."""

    qmap: tuple
    shifts: tuple
    base_auto: Any
    base: Any = field(compare=False, repr=False, default=None)
    name: str | None = field(default=None, compare=False)

    def __call__(self, g):
        k, q = g
        return (self.base.mul(apply_twist(self.base_auto, k), self.shifts[q]), self.qmap[q])


@dataclass(frozen=True, eq=False)
class FuncAuto:
    func: Callable
    name: str | None = None

    def __call__(self, x):
        return self.func(x)


# --------------------------------------------------------------------------
# boxes of recognisable sets


@dataclass(frozen=True)
class FiniteBox:
    elements: frozenset


@dataclass(frozen=True)
class FreeBox:
    hom: FiniteQuotientHom
    allowed: frozenset


@dataclass(frozen=True)
class ProductBox:
    components: tuple  # box or None (whole factor)


@dataclass(frozen=True)
class ExtBox:
    q: int
    k: Any = None  # box over the base, None = whole base


@dataclass(frozen=True)
class RecSet:
    """Finite union of structure-aligned boxes; a ``None`` box is the whole
    group."""

    boxes: tuple = ()

    @classmethod
    def whole(cls) -> RecSet:
        return cls((None,))

    def is_whole(self) -> bool:
        return any(b is None for b in self.boxes)


# --------------------------------------------------------------------------
# structures


class GroupStructure:
    kind = "abstract"

    def __init__(self):
        self.labels: dict[str, Any] = {}
        self.automorphisms: dict[str, Any] = {}
        self.recsets: dict[str, RecSet] = {}

    # group protocol -----------------------------------------------------
    def identity(self):
        raise NotImplementedError

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def eq(self, g, h) -> bool:
        return g == h

    def is_identity(self, g) -> bool:
        return self.eq(g, self.identity())

    def check_value(self, g) -> None:
        raise NotImplementedError

    def generators(self) -> list:
        raise NotImplementedError

    def random_value(self, rng: random.Random):
        raise NotImplementedError

    def power(self, g, n: int):
        if n < 0:
            g, n = self.inv(g), -n
        acc = self.identity()
        for _ in range(n):
            acc = self.mul(acc, g)
        return acc

    # finiteness -----------------------------------------------------------
    def order(self) -> int | None:
        return None

    def elements(self) -> list:
        raise StructureError(f"{self.kind} structure is infinite")

    # recognisable sets ---------------------------------------------------
    def box_member(self, g, box) -> bool:
        raise NotImplementedError

    def in_box(self, g, box) -> bool:
        return box is None or self.box_member(g, box)

    def member(self, g, recset) -> bool:
        if recset is None:
            return True
        if isinstance(recset, str):
            recset = self.recsets[recset]
        return any(self.in_box(g, b) for b in recset.boxes)

    # automorphisms --------------------------------------------------------
    def normalize_auto(self, f):
        raise NotImplementedError

    def _compose(self, f, g):
        return self.normalize_auto(FuncAuto(lambda x: f(g(x))))

    def compose_auto(self, f, g):
        """``f o g`` in native form (None is the identity)."""
        if f is None:
            return g
        if g is None:
            return f
        return self._compose(f, g)

    def check_automorphism(self, f) -> None:
        raise NotImplementedError

    def is_identity_auto(self, f) -> bool:
        if f is None:
            return True
        return all(self.eq(f(x), x) for x in self.generators())

    def register_automorphism(self, name: str, f):
        f = self.normalize_auto(f)
        self.check_automorphism(f)
        f = dataclasses.replace(f, name=name)
        self.automorphisms[name] = f
        return f

    def resolve_twist(self, tag):
        if tag is None or tag == "id":
            return None
        if isinstance(tag, str):
            try:
                return self.automorphisms[tag]
            except KeyError:
                raise TwistError(f"unknown twist tag {tag!r}") from None
        return tag

    # literals ---------------------------------------------------------------
    def to_literal(self, g):
        raise NotImplementedError

    def from_literal(self, obj):
        raise NotImplementedError

    def label_of(self, g) -> str | None:
        for name in sorted(self.labels):
            if self.eq(self.labels[name], g):
                return name
        return None

    def same_as(self, other) -> bool:
        return self is other


class Finite(GroupStructure):
    kind = "finite"

    def __init__(self, group: FiniteGroup):
        super().__init__()
        self.group = group

    def identity(self):
        return self.group.identity_index

    def mul(self, g, h):
        return int(self.group.table[g, h])

    def inv(self, g):
        return int(self.group.inverse_table[g])

    def check_value(self, g):
        self.group.check_value(g)

    def generators(self):
        return list(self.group.generators)

    def random_value(self, rng):
        return rng.randrange(self.group.order)

    def order(self):
        return self.group.order

    def elements(self):
        return list(range(self.group.order))

    def box_member(self, g, box):
        return g in box.elements

    def normalize_auto(self, f):
        if isinstance(f, FiniteAuto):
            return f
        return FiniteAuto(tuple(int(f(i)) for i in range(self.group.order)))

    def _compose(self, f, g):
        f, g = self.normalize_auto(f), self.normalize_auto(g)
        return FiniteAuto(tuple(f.table[x] for x in g.table))

    def check_automorphism(self, f):
        f = self.normalize_auto(f)
        t = np.asarray(f.table)
        n = self.group.order
        if sorted(f.table) != list(range(n)):
            raise StructureError("finite automorphism is not a bijection")
        T = self.group.table
        if not np.array_equal(T[t[:, None], t[None, :]], t[T]):
            raise StructureError("finite automorphism is not a homomorphism")

    def auto_from_images(self, images: dict) -> FiniteAuto:
        """Extend generator images (index -> index) to a homomorphism."""
        G = self.group
        table = {G.identity_index: G.identity_index}
        frontier = [G.identity_index]
        gens = sorted(images)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.mul(x, g)
                    img = G.mul(table[x], images[g])
                    if y in table:
                        if table[y] != img:
                            raise StructureError("generator images do not define a homomorphism")
                    else:
                        table[y] = img
                        nxt.append(y)
            frontier = nxt
        if len(table) != G.order:
            raise StructureError("generator images do not cover the group")
        f = FiniteAuto(tuple(table[i] for i in range(G.order)))
        self.check_automorphism(f)
        return f

    def to_literal(self, g):
        label = self.group.elements[g]
        if isinstance(label, Perm):
            return label.one_based()
        return int(g)

    def from_literal(self, obj):
        if isinstance(obj, str):
            if obj in self.labels:
                return self.labels[obj]
            raise ValueError(f"unknown label {obj!r}")
        if isinstance(obj, list):
            return self.group.index_of(Perm.from_one_based(obj))
        if isinstance(obj, int) and not isinstance(obj, bool):
            self.group.check_value(obj)
            return obj
        raise ValueError(f"bad finite element literal {obj!r}")

    def same_as(self, other):
        return self is other or (isinstance(other, Finite) and other.group.order == self.group.order
                                 and np.array_equal(other.group.table, self.group.table))


class FreeAbelian(GroupStructure):
    kind = "free_abelian"

    def __init__(self, rank: int):
        super().__init__()
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        self.rank = rank

    def identity(self):
        return (0,) * self.rank

    def mul(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        return tuple(-a for a in g)

    def check_value(self, g):
        if not isinstance(g, tuple) or len(g) != self.rank or \
                not all(isinstance(x, int) for x in g):
            raise WrongGroupError(f"{g!r} is not a vector of Z^{self.rank}")

    def generators(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def random_value(self, rng):
        return tuple(rng.randint(-5, 5) for _ in range(self.rank))

    def order(self):
        return 1 if self.rank == 0 else None

    def elements(self):
        if self.rank == 0:
            return [()]
        return super().elements()

    def box_member(self, g, box):
        return box.contains(g)

    def normalize_auto(self, f):
        if isinstance(f, MatrixAuto):
            return f
        cols = [f(e) for e in self.generators()]
        return MatrixAuto(tuple(tuple(cols[j][i] for j in range(self.rank))
                                for i in range(self.rank)))

    def _compose(self, f, g):
        f, g = self.normalize_auto(f), self.normalize_auto(g)
        return MatrixAuto(tuple(tuple(r) for r in intmat.matmul(
            [list(r) for r in f.matrix], [list(r) for r in g.matrix], self.rank, self.rank)))

    def check_automorphism(self, f):
        f = self.normalize_auto(f)
        if abs(intmat.det([list(r) for r in f.matrix])) != 1:
            raise StructureError("matrix is not unimodular")

    def to_literal(self, g):
        return list(g)

    def from_literal(self, obj):
        if isinstance(obj, str):
            if obj in self.labels:
                return self.labels[obj]
            raise ValueError(f"unknown label {obj!r}")
        v = tuple(int(x) for x in obj)
        self.check_value(v)
        return v

    def same_as(self, other):
        return isinstance(other, FreeAbelian) and other.rank == self.rank


class Free(GroupStructure):
    kind = "free"

    def __init__(self, rank: int, bound: int = 4, names: Sequence[str] | None = None):
        super().__init__()
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank
        self.bound = bound
        if names is None:
            names = [chr(ord("a") + i) for i in range(rank)] if rank <= 26 else \
                [f"x{i + 1}" for i in range(rank)]
        self.names = list(names)

    def identity(self):
        return ()

    def mul(self, g, h):
        return free_mul(g, h)

    def inv(self, g):
        return free_inv(g)

    def check_value(self, g):
        if not isinstance(g, tuple) or any(not 1 <= abs(x) <= self.rank for x in g) \
                or free_reduce(g) != g:
            raise WrongGroupError(f"{g!r} is not a reduced word of F_{self.rank}")

    def generators(self):
        return [(i,) for i in range(1, self.rank + 1)]

    def random_value(self, rng):
        n = rng.randint(0, 4)
        return free_reduce([rng.choice([1, -1]) * rng.randint(1, self.rank) for _ in range(n)])

    def box_member(self, g, box):
        return box.hom(g) in box.allowed

    def normalize_auto(self, f):
        if isinstance(f, FreeAuto):
            return f
        return FreeAuto(tuple(f(g) for g in self.generators()))

    def _compose(self, f, g):
        f, g = self.normalize_auto(f), self.normalize_auto(g)
        return FreeAuto(tuple(substitute(w, f.images) for w in g.images))

    def check_automorphism(self, f):
        if not is_automorphism(self.auto_images(f), self.rank):
            raise StructureError("substitution is not an automorphism of the free group")

    def auto_images(self, f) -> tuple:
        return self.normalize_auto(f).images

    def to_literal(self, g):
        return format_word(g, self.names)

    def from_literal(self, obj):
        if isinstance(obj, str):
            if obj in self.labels:
                return self.labels[obj]
            return parse_word(obj, self.names)
        raise ValueError(f"bad free-group literal {obj!r}")

    def same_as(self, other):
        return isinstance(other, Free) and other.rank == self.rank and other.bound == self.bound


class DirectProduct(GroupStructure):
    kind = "product"

    def __init__(self, factors: Sequence[GroupStructure]):
        super().__init__()
        self.factors = list(factors)

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def mul(self, g, h):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, g, h))

    def inv(self, g):
        return tuple(f.inv(a) for f, a in zip(self.factors, g))

    def eq(self, g, h):
        return all(f.eq(a, b) for f, a, b in zip(self.factors, g, h))

    def check_value(self, g):
        if not isinstance(g, tuple) or len(g) != len(self.factors):
            raise WrongGroupError(f"{g!r} is not a {len(self.factors)}-tuple")
        for f, a in zip(self.factors, g):
            f.check_value(a)

    def embed(self, i: int, x):
        out = list(self.identity())
        out[i] = x
        return tuple(out)

    def generators(self):
        return [self.embed(i, x) for i, f in enumerate(self.factors) for x in f.generators()]

    def random_value(self, rng):
        return tuple(f.random_value(rng) for f in self.factors)

    def order(self):
        out = 1
        for f in self.factors:
            o = f.order()
            if o is None:
                return None
            out *= o
        return out

    def elements(self):
        return [tuple(c) for c in itertools.product(*(f.elements() for f in self.factors))]

    def box_member(self, g, box):
        return all(f.in_box(a, b) for f, a, b in zip(self.factors, g, box.components))

    def normalize_auto(self, f):
        n = len(self.factors)
        if isinstance(f, ProductAuto):
            comps = tuple(None if c is None else self.factors[i].normalize_auto(c)
                          for i, c in enumerate(f.components))
            return ProductAuto(tuple(f.perm), comps, f.name)
        perm: list = [None] * n
        comps: list = [None] * n
        for i, fac in enumerate(self.factors):
            targets = set()
            for x in fac.generators():
                y = f(self.embed(i, x))
                targets |= {j for j in range(n) if not self.factors[j].is_identity(y[j])}
            if len(targets) > 1:
                raise TwistError("automorphism does not permute the direct factors")
            if targets:
                j = targets.pop()
                perm[i] = j
                comps[i] = self.factors[j].normalize_auto(
                    FuncAuto(lambda x, i=i, j=j: f(self.embed(i, x))[j]))
        free_targets = iter(sorted(set(range(n)) - {p for p in perm if p is not None}))
        perm = [p if p is not None else next(free_targets) for p in perm]
        comps = [None if c is not None and self.factors[i].is_identity_auto(c) else c
                 for i, c in enumerate(comps)]
        return ProductAuto(tuple(perm), tuple(comps))

    def _compose(self, f, g):
        f, g = self.normalize_auto(f), self.normalize_auto(g)
        perm, comps = [], []
        for i in range(len(self.factors)):
            j = g.perm[i]
            perm.append(f.perm[j])
            comps.append(self.factors[j].compose_auto(f.components[j], g.components[i]))
        return ProductAuto(tuple(perm), tuple(comps))

    def check_automorphism(self, f):
        f = self.normalize_auto(f)
        n = len(self.factors)
        if sorted(f.perm) != list(range(n)):
            raise StructureError("factor map is not a permutation")
        for i, j in enumerate(f.perm):
            if i != j and not self.factors[i].same_as(self.factors[j]):
                raise StructureError(f"factors {i} and {j} are permuted but differ")
            if f.components[i] is not None:
                self.factors[j].check_automorphism(f.components[i])

    def to_literal(self, g):
        return [f.to_literal(a) for f, a in zip(self.factors, g)]

    def from_literal(self, obj):
        if isinstance(obj, str):
            if obj in self.labels:
                return self.labels[obj]
            raise ValueError(f"unknown label {obj!r}")
        if not isinstance(obj, list) or len(obj) != len(self.factors):
            raise ValueError(f"bad product literal {obj!r}")
        return tuple(f.from_literal(x) for f, x in zip(self.factors, obj))

    def same_as(self, other):
        return self is other or (isinstance(other, DirectProduct)
                                 and len(other.factors) == len(self.factors)
                                 and all(a.same_as(b) for a, b in zip(self.factors, other.factors)))


class Extension(GroupStructure):
    """Extension of ``base`` by a finite ``quotient``.

    ``action[q]`` is the base automorphism ``k -> t_q k t_q^-1`` (None for the
    identity) and ``cocycle[(p, q)]`` the base element with
    ``t_p t_q = c(p, q) t_{pq}`` (missing entries are the identity).
    """

    kind = "extension"

    def __init__(self, base: GroupStructure, quotient: FiniteGroup, action: Sequence | dict,
                 cocycle: dict | None = None, validate: bool = True):
        super().__init__()
        self.base = base
        self.quotient = quotient
        self.quotient_labels: dict[str, int] = {}
        Q = quotient
        if isinstance(action, dict):
            action = [action.get(q) for q in range(Q.order)]
        self.action = [None if a is None else base.normalize_auto(a) for a in action]
        self.action = [None if a is not None and isinstance(base, (Finite, FreeAbelian, Free))
                       and base.is_identity_auto(a) else a for a in self.action]
        if len(self.action) != Q.order:
            raise StructureError("need one action automorphism per quotient element")
        cocycle = cocycle or {}
        e = base.identity()
        self.cocycle = {(p, q): e for p in range(Q.order) for q in range(Q.order)}
        for (p, q), v in cocycle.items():
            base.check_value(v)
            self.cocycle[(int(p), int(q))] = v
        if validate:
            self.validate()

    def act(self, q: int, k):
        return apply_twist(self.action[q], k)

    def validate(self) -> None:
        Q, K = self.quotient, self.base
        e = Q.identity_index
        if self.action[e] is not None and not K.is_identity_auto(self.action[e]):
            raise StructureError("action of the quotient identity is not the identity")
        for q in range(Q.order):
            if not K.is_identity(self.cocycle[(e, q)]) or not K.is_identity(self.cocycle[(q, e)]):
                raise StructureError(f"cocycle not normalised at ({e}, {q})")
            if self.action[q] is not None:
                K.check_automorphism(self.action[q])
        gens = K.generators()
        for p in range(Q.order):
            for q in range(Q.order):
                c = self.cocycle[(p, q)]
                ci = K.inv(c)
                pq = Q.mul(p, q)
                for x in gens:
                    lhs = self.act(p, self.act(q, x))
                    rhs = K.mul(K.mul(c, self.act(pq, x)), ci)
                    if not K.eq(lhs, rhs):
                        raise StructureError(
                            f"action incompatible with cocycle at pair ({p}, {q})")
        for p in range(Q.order):
            for q in range(Q.order):
                pq = Q.mul(p, q)
                for r in range(Q.order):
                    lhs = K.mul(self.cocycle[(p, q)], self.cocycle[(pq, r)])
                    rhs = K.mul(self.act(p, self.cocycle[(q, r)]), self.cocycle[(p, Q.mul(q, r))])
                    if not K.eq(lhs, rhs):
                        raise StructureError(f"cocycle identity fails on triple ({p}, {q}, {r})")

    def identity(self):
        return (self.base.identity(), self.quotient.identity_index)

    def transversal(self, q: int):
        return (self.base.identity(), q)

    def mul(self, g, h):
        K = self.base
        (k, p), (k2, q) = g, h
        return (K.mul(K.mul(k, self.act(p, k2)), self.cocycle[(p, q)]), self.quotient.mul(p, q))

    def inv(self, g):
        K, Q = self.base, self.quotient
        k, q = g
        qi = Q.inv(q)
        c = self.cocycle[(qi, q)]
        return (K.mul(K.inv(c), self.act(qi, K.inv(k))), qi)

    def eq(self, g, h):
        return g[1] == h[1] and self.base.eq(g[0], h[0])

    def check_value(self, g):
        if not isinstance(g, tuple) or len(g) != 2:
            raise WrongGroupError(f"{g!r} is not an extension pair")
        self.base.check_value(g[0])
        self.quotient.check_value(g[1])

    def generators(self):
        e = self.quotient.identity_index
        return [(x, e) for x in self.base.generators()] + \
            [self.transversal(q) for q in self.quotient.generators]

    def random_value(self, rng):
        return (self.base.random_value(rng), rng.randrange(self.quotient.order))

    def order(self):
        o = self.base.order()
        return None if o is None else o * self.quotient.order

    def elements(self):
        return [(k, q) for k in self.base.elements() for q in range(self.quotient.order)]

    def box_member(self, g, box):
        return g[1] == box.q and self.base.in_box(g[0], box.k)

    def normalize_auto(self, f):
        if isinstance(f, ExtensionAuto):
            return f
        K, Q = self.base, self.quotient
        e = Q.identity_index
        qmap, shifts = [], []
        for q in range(Q.order):
            k, q2 = f(self.transversal(q))
            qmap.append(q2)
            shifts.append(k)
        for x in K.generators():
            if f((x, e))[1] != e:
                raise TwistError("automorphism does not preserve the extension base")
        base_auto = K.normalize_auto(FuncAuto(lambda k: f((k, e))[0]))
        return ExtensionAuto(tuple(qmap), tuple(shifts), base_auto, K)

    def _compose(self, f, g):
        f, g = self.normalize_auto(f), self.normalize_auto(g)
        K = self.base
        shifts = tuple(K.mul(apply_twist(f.base_auto, g.shifts[q]), f.shifts[g.qmap[q]])
                       for q in range(self.quotient.order))
        return ExtensionAuto(tuple(f.qmap[g.qmap[q]] for q in range(self.quotient.order)),
                             shifts, K.compose_auto(f.base_auto, g.base_auto), K)

    def check_automorphism(self, f):
        f = self.normalize_auto(f)
        if sorted(f.qmap) != list(range(self.quotient.order)):
            raise StructureError("quotient part of the automorphism is not a bijection")
        if f.base_auto is not None:
            self.base.check_automorphism(f.base_auto)
        gens = self.generators()
        for a in gens:
            for b in gens:
                if not self.eq(f(self.mul(a, b)), self.mul(f(a), f(b))):
                    raise StructureError("map is not a homomorphism")

    def to_literal(self, g):
        k, q = g
        for name in sorted(self.quotient_labels):
            if self.quotient_labels[name] == q:
                return {"k": self.base.to_literal(k), "q": name}
        return {"k": self.base.to_literal(k), "q": _quotient_literal(self.quotient, q)}

    def from_literal(self, obj):
        if isinstance(obj, str):
            if obj in self.labels:
                return self.labels[obj]
            raise ValueError(f"unknown label {obj!r}")
        if not isinstance(obj, dict) or set(obj) - {"k", "q"}:
            raise ValueError(f"bad extension literal {obj!r}")
        k = self.base.from_literal(obj["k"]) if "k" in obj else self.base.identity()
        q = quotient_from_literal(self.quotient, obj["q"], self.quotient_labels) \
            if "q" in obj else self.quotient.identity_index
        return (k, q)

    def same_as(self, other):
        return self is other


def _quotient_literal(Q: FiniteGroup, q: int):
    label = Q.elements[q]
    return label.one_based() if isinstance(label, Perm) else int(q)


def quotient_from_literal(Q: FiniteGroup, obj, labels: dict | None = None) -> int:
    if isinstance(obj, str):
        if labels and obj in labels:
            return labels[obj]
        raise ValueError(f"unknown quotient label {obj!r}")
    if isinstance(obj, list):
        return Q.index_of(Perm.from_one_based(obj))
    if isinstance(obj, int) and not isinstance(obj, bool):
        Q.check_value(obj)
        return obj
    raise ValueError(f"bad quotient literal {obj!r}")


# --------------------------------------------------------------------------
# module-level helpers


def gmul(g, h, structure: GroupStructure):
    return structure.mul(g, h)


def ginv(g, structure: GroupStructure):
    return structure.inv(g)


def gid(structure: GroupStructure):
    return structure.identity()


def recset_member(g, recset: RecSet, structure: GroupStructure) -> bool:
    return structure.member(g, recset)
