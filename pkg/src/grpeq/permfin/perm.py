from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Perm:
    """Permutation of {0..n-1}, stored 0-based.

    Composition is right-to-left: ``(p * q)(i) == p(q(i))``.
    """

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Perm:
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Perm:
        """Cycles in 1-based notation, e.g. ``Perm.from_cycles(3, (1, 2, 3))``."""
        imgs = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a - 1] = b - 1
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Perm) -> Perm:
        return perm_compose(self, other)

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        return "Perm(" + ("".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()") + ")"


def perm_compose(p: Perm, q: Perm) -> Perm:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Perm(tuple(p.images[i] for i in q.images))


def closure(generators: Iterable[Perm], degree: int | None = None):
    """Breadth-first closure of a set of permutations into a FiniteGroup.

    Elements are listed in discovery order: identity first, then right
    multiplication by the sorted generators.
    """
    from .group import FiniteGroup

    gens = sorted(set(generators))
    if gens:
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators have different degrees")
    elif degree is None:
        degree = 0
    ident = Perm.identity(degree)
    elements = [ident]
    index = {ident: 0}
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        for g in gens:
            y = x * g
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
        pos += 1
    n = len(elements)
    table = [[index[a * b] for b in elements] for a in elements]
    gen_idx = tuple(index[g] for g in gens)
    return FiniteGroup(elements, table, generators=gen_idx, source_perms=tuple(gens))
