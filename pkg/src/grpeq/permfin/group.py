from __future__ import annotations

import random
from typing import Any, Sequence

import numpy as np

from ..core import GroupEqError, WrongGroupError

EXHAUSTIVE_ASSOC_LIMIT = 64
SAMPLED_ASSOC_TRIPLES = 20000


class GroupAxiomError(GroupEqError):
    pass


class FiniteGroup:
    """Finite group given by a multiplication table over indices 0..n-1.

    ``elements`` holds an arbitrary label per index (``Perm`` objects when
    built by :func:`closure`).  Elements are compared by index.
    """

    def __init__(self, elements: Sequence[Any], table, generators: Sequence[int] | None = None,
                 source_perms: tuple | None = None, validate: bool = True):
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=np.int64)
        n = len(self.elements)
        if self.table.shape != (n, n):
            raise GroupAxiomError(f"table shape {self.table.shape} does not match {n} elements")
        if n == 0:
            raise GroupAxiomError("a group has at least one element")
        self.order = n
        self.source_perms = source_perms
        self._index = None
        ident = [i for i in range(n) if np.array_equal(self.table[i], np.arange(n))]
        if not ident:
            raise GroupAxiomError("no identity element")
        self.identity_index = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(self.table[a] == self.identity_index)[0]
            if len(hits) != 1:
                raise GroupAxiomError(f"element {a} has no unique inverse")
            inv[a] = hits[0]
        self.inverse_table = inv
        if generators is None:
            generators = [i for i in range(n) if i != self.identity_index]
        self.generators = tuple(int(g) for g in generators)
        if validate:
            self.validate()

    def validate(self) -> None:
        t, n, e = self.table, self.order, self.identity_index
        if t.min() < 0 or t.max() >= n:
            raise GroupAxiomError("table entries out of range")
        if not np.array_equal(t[:, e], np.arange(n)):
            raise GroupAxiomError("identity is not a right identity")
        if not np.all(t[np.arange(n), self.inverse_table] == e):
            raise GroupAxiomError("left and right inverses differ")
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            left = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
            right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
            bad = np.argwhere(left != right)
            if len(bad):
                a, b, c = bad[0]
                raise GroupAxiomError(f"associativity fails on triple ({a}, {b}, {c})")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, SAMPLED_ASSOC_TRIPLES))
            bad = np.nonzero(t[t[a, b], c] != t[a, t[b, c]])[0]
            if len(bad):
                i = bad[0]
                raise GroupAxiomError(f"associativity fails on triple ({a[i]}, {b[i]}, {c[i]})")

    # group protocol
    def identity(self) -> int:
        return self.identity_index

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse_table[a])

    def is_identity(self, a: int) -> bool:
        return a == self.identity_index

    def check_value(self, a) -> None:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.order:
            raise WrongGroupError(f"{a!r} is not an element index of a group of order {self.order}")

    def member(self, a: int, constraint) -> bool:
        return a in allowed_elements(constraint, self.order)

    def random_value(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def values(self) -> range:
        return range(self.order)

    def index_of(self, label) -> int:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index[label]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc = self.identity_index
        for _ in range(k):
            acc = self.mul(acc, a)
        return acc

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = self.mul(x, a)
            k += 1
        return k

    def subgroup(self, members: Sequence[int]) -> tuple[FiniteGroup, list[int]]:
        """Subgroup on the given (closed) index set; returns it with the
        embedding list local index -> ambient index."""
        members = sorted(set(members), key=lambda i: (i != self.identity_index, i))
        local = {g: i for i, g in enumerate(members)}
        table = [[local[self.mul(a, b)] for b in members] for a in members]
        return FiniteGroup([self.elements[g] for g in members], table), members

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def allowed_elements(constraint, n: int) -> frozenset:
    """Flatten a finite constraint (RecSet of element-subset boxes, or any
    iterable of indices) to a set of element indices."""
    if constraint is None:
        return frozenset(range(n))
    boxes = getattr(constraint, "boxes", None)
    if boxes is None:
        return frozenset(int(x) for x in constraint)
    out = set()
    for box in boxes:
        if box is None:
            return frozenset(range(n))
        out.update(getattr(box, "elements", box))
    return frozenset(out)


def from_table(table, labels: Sequence[Any] | None = None) -> FiniteGroup:
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    return FiniteGroup(list(labels) if labels is not None else list(range(n)), table)
