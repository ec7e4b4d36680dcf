"""Free groups of finite rank.

Words are tuples of nonzero ints: generator ``i`` (1-based) is ``i``, its
inverse ``-i``.  All words handed out are freely reduced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import core
from .core import Const, GroupEqError, SolverContext, System, Verdict, sat, unknown, unsat
from .lattice import CongruenceBox, linear_form, solve_abelian


class NotAutomorphismError(GroupEqError):
    pass


def free_reduce(letters: Sequence[int]) -> tuple:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_mul(u: Sequence[int], v: Sequence[int], rank: int | None = None) -> tuple:
    if rank is not None:
        for x in itertools.chain(u, v):
            if not 1 <= abs(x) <= rank:
                raise ValueError(f"letter {x} outside rank {rank}")
    # u and v are reduced, so cancellation only happens at the seam
    u, v = list(u), list(v)
    i = 0
    while i < len(u) and i < len(v) and u[len(u) - 1 - i] == -v[i]:
        i += 1
    return tuple(u[:len(u) - i] + v[i:])


def free_inv(u: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(u))


def abelianize(w: Sequence[int], rank: int) -> tuple:
    out = [0] * rank
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(out)


def substitute(w: Sequence[int], images: Sequence[Sequence[int]]) -> tuple:
    out: tuple = ()
    for x in w:
        img = images[abs(x) - 1]
        out = free_mul(out, img if x > 0 else free_inv(img))
    return out


def letter_key(x: int) -> tuple:
    return (abs(x), x < 0)


def length_lex_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_key(x) for x in w))


def words_up_to(rank: int, length: int) -> list[tuple]:
    """All reduced words of length <= ``length``, in length-lex order."""
    letters = sorted([i for g in range(1, rank + 1) for i in (g, -g)], key=letter_key)
    out = [()]
    layer = [()]
    for _ in range(length):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        layer = nxt
    return out


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[abs(x) - 1] + ("^-1" if x < 0 else "") for x in w)


def parse_word(text: str, names: Sequence[str]) -> tuple:
    text = text.strip()
    if text in ("", "1"):
        return ()
    index = {n: i + 1 for i, n in enumerate(names)}
    letters = []
    for tok in text.split():
        base, _, exp = tok.partition("^")
        if base not in index:
            raise ValueError(f"unknown generator {base!r}")
        e = int(exp) if exp else 1
        letters.extend([index[base] if e > 0 else -index[base]] * abs(e))
    return free_reduce(letters)


def is_automorphism(images: Sequence[Sequence[int]], rank: int) -> bool:
    """Whether the substitution ``gen_i -> images[i]`` is an automorphism.

    Stallings folding decides whether the images generate the whole free
    group; surjective endomorphisms of finitely generated free groups are
    injective, so that suffices.
    """
    if len(images) != rank:
        return False
    parent: dict[int, int] = {0: 0}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    edges = []  # (src, positive letter, dst)
    nxt = 1
    for img in images:
        img = free_reduce(img)
        if not img:
            return False
        cur = 0
        for pos, x in enumerate(img):
            if pos == len(img) - 1:
                dst = 0
            else:
                dst = nxt
                parent[dst] = dst
                nxt += 1
            if x > 0:
                edges.append((cur, x, dst))
            else:
                edges.append((dst, -x, cur))
            cur = dst
    changed = True
    while changed:
        changed = False
        out_map: dict = {}
        for s, g, d in edges:
            s, d = find(s), find(d)
            for key, target in (((s, g), d), ((d, -g), s)):
                if key in out_map and find(out_map[key]) != target:
                    a, b = find(out_map[key]), target
                    parent[max(a, b)] = min(a, b)
                    changed = True
                    break
                out_map[key] = target
            if changed:
                break
    vertices = {find(v) for v in parent}
    if len(vertices) != 1:
        return False
    labels = {g for _, g, _ in edges}
    return labels == set(range(1, rank + 1))


@dataclass(frozen=True)
class FiniteQuotientHom:
    """Homomorphism from a free group to a finite group, given by the images
    of the generators (element indices)."""

    group: object  # permfin.FiniteGroup
    targets: tuple

    def __call__(self, w: Sequence[int]) -> int:
        G = self.group
        acc = G.identity()
        for x in w:
            t = self.targets[abs(x) - 1]
            acc = G.mul(acc, t if x > 0 else G.inv(t))
        return acc

    def __hash__(self):
        return hash((id(self.group), self.targets))

    def __eq__(self, other):
        return (isinstance(other, FiniteQuotientHom) and self.group is other.group
                and self.targets == other.targets)


def finite_quotient_hom(targets: Sequence[int], group) -> FiniteQuotientHom:
    for t in targets:
        group.check_value(t)
    return FiniteQuotientHom(group, tuple(int(t) for t in targets))


def _abelian_twist_matrix(twist, rank: int) -> list[list[int]]:
    cols = [abelianize(twist(((g,))), rank) for g in range(1, rank + 1)]
    return [[cols[j][i] for j in range(rank)] for i in range(rank)]


def _abelian_form(w, rank: int, exact_constraints: bool = False):
    terms, const = [], [0] * rank
    for t in w:
        if isinstance(t, Const):
            const = [a + b for a, b in zip(const, abelianize(t.value, rank))]
        else:
            if t.twist is None:
                M = [[int(i == j) for j in range(rank)] for i in range(rank)]
            else:
                M = _abelian_twist_matrix(t.twist, rank)
            if t.exponent < 0:
                M = [[-x for x in row] for row in M]
            terms.append((t.variable, M))
    return linear_form(terms, const, rank)


def _rank_one_boxes(recset) -> list:
    """Congruence boxes describing a recognisable subset of F_1 = Z."""
    boxes = []
    for box in recset.boxes:
        if box is None:
            return [None]
        hom, allowed = box.hom, box.allowed
        gen = hom.targets[0]
        order = hom.group.element_order(gen)
        for res in range(order):
            if hom.group.power(gen, res) in allowed:
                boxes.append(CongruenceBox.mod([res], [order]))
    return boxes


def solve_free_bounded(group, system: System, bound: int | None = None,
                       ctx: SolverContext | None = None) -> Verdict:
    """Bounded semi-decision over a free group (``group`` is a Free structure).

    UNSAT only when the abelianised equations are infeasible (for rank 1,
    where abelianisation is an isomorphism, the full system is decided).
    Otherwise the length-lex-first witness with all words of length <= bound,
    or UNKNOWN.
    """
    rank = group.rank
    if bound is None:
        bound = ctx.free_bound if ctx is not None and ctx.free_bound is not None else group.bound
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    for w in system.equations + system.inequations:
        for t in w:
            if not isinstance(t, Const) and t.twist is not None:
                if not is_automorphism(group.auto_images(t.twist), rank):
                    raise NotAutomorphismError("twist is not an automorphism of the free group")
    eqs = [_abelian_form(w, rank) for w in system.equations]
    fallback = None
    if rank == 1:
        diseqs = [_abelian_form(w, rank) for w in system.inequations]
        cons = {v: _rank_one_boxes(rec) for v, rec in system.constraints.items()}
        ab = solve_abelian(1, system.variables, eqs, diseqs, cons, ctx)
        if ab.is_unsat:
            return unsat()
        fallback = {v: free_reduce([1 if x[0] > 0 else -1] * abs(x[0]))
                    for v, x in ab.assignment.items()}
    else:
        ab = solve_abelian(rank, system.variables, eqs, (), {}, ctx)
        if ab.is_unsat:
            return unsat()
    cap = ctx.assignment_cap if ctx is not None else 10**7
    witness = _bounded_search(group, system, bound, cap)
    if witness is not None:
        return sat(witness)
    if fallback is not None:
        return sat(fallback)
    return unknown(f"bound B exhausted (B={bound})")


def iter_bounded_assignments(group, variables: Sequence[str], bound: int,
                             domains: dict | None = None) -> Iterator[dict]:
    """Assignments ordered by (max length, length-lex per variable)."""
    variables = list(variables)
    if not variables:
        yield {}
        return
    pools = [domains[v] if domains else words_up_to(group.rank, bound) for v in variables]
    for L in range(bound + 1):
        strata = [[w for w in pool if len(w) <= L] for pool in pools]
        for combo in itertools.product(*strata):
            if max(len(w) for w in combo) == L:
                yield dict(zip(variables, combo))


def _bounded_search(group, system: System, bound: int, cap: int):
    variables = list(system.variables)
    words = words_up_to(group.rank, bound)
    domains = {}
    for v in variables:
        rec = system.constraints.get(v)
        domains[v] = [w for w in words if rec is None or group.member(w, rec)]
    total = 1
    for v in variables:
        total *= len(domains[v])
    if total > cap:
        from .permfin import AssignmentCapExceeded
        raise AssignmentCapExceeded(f"{total} bounded assignments exceed the cap {cap}")
    for assignment in iter_bounded_assignments(group, variables, bound, domains):
        if core.check_witness(system, assignment, group):
            return assignment
    return None
