"""Permutational wreath products, the embedding of a virtually direct product
into a product of wreath products, and the solver pipeline built on it."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import (Const, EqWord, GroupEqError, Occurrence, SolverContext, System, TwistError,
                    Verdict, check_witness, run_entry, sat)
from ..freegrp import FiniteQuotientHom
from ..lattice import CongruenceBox
from ..permfin import FiniteGroup, Perm, closure
from .solve import WitnessError, _dispatch, resolve_twists
from .structures import (DirectProduct, ExtBox, Extension, Finite, FiniteBox, Free, FreeAbelian,
                         FreeBox, GroupStructure, ProductAuto, ProductBox, RecSet)


class PullbackError(GroupEqError):
    """A value of the image could not be pulled back (internal inconsistency)."""


def build_wreath(J: GroupStructure, P: FiniteGroup) -> Extension:
    """``J wr P`` for a permutation group ``P``: ``(j, pi)(k, rho) =
    (j_i k_{pi^-1(i)}, pi rho)``."""
    if not P.elements or not isinstance(P.elements[0], Perm):
        raise ValueError("wreath top group must be a permutation group")
    n = P.elements[0].degree
    base = DirectProduct([J] * n)
    action = [None if p.is_identity() else ProductAuto(tuple(p.images), (None,) * n)
              for p in P.elements]
    return Extension(base, P, action)


def product_view(G: Extension) -> Extension:
    """``G`` itself when its base is a direct product; otherwise the same
    extension over a one-factor product."""
    if isinstance(G.base, DirectProduct):
        return G
    K = G.base
    action = [ProductAuto((0,), (a,)) for a in G.action]
    cocycle = {key: (c,) for key, c in G.cocycle.items()}
    view = Extension(DirectProduct([K]), G.quotient, action, cocycle, validate=False)
    view.wrapped = G
    return view


def _wrap(view, g):
    return ((g[0],), g[1]) if hasattr(view, "wrapped") else g


def _unwrap(view, g):
    return (g[0][0], g[1]) if hasattr(view, "wrapped") else g


def _wrap_box(view, box):
    if box is None or not hasattr(view, "wrapped"):
        return box
    return ExtBox(box.q, None if box.k is None else ProductBox((box.k,)))


class _OrbitPart:
    """Embedding data for one orbit of factors."""

    def __init__(self, G: Extension, orbit):
        K, Q = G.base, G.quotient
        n = len(K.factors)
        orbit = sorted(orbit)
        self.G, self.orbit = G, orbit
        self.sigma = [tuple(range(n)) if a is None else a.perm for a in G.action]
        o1 = orbit[0]
        reached = {self.sigma[q][o1] for q in range(Q.order)}
        if reached != set(orbit):
            raise ValueError(f"indices {orbit} do not form one orbit of the factor action")
        pos = {o: i for i, o in enumerate(orbit)}
        stab = [q for q in range(Q.order) if self.sigma[q][o1] == o1]
        S, emb = Q.subgroup(stab)
        self.stab_local = {g: l for l, g in enumerate(emb)}
        reps = [next(q for q in range(Q.order) if self.sigma[q][o1] == o) for o in orbit]
        reps[0] = Q.identity_index
        self.reps = reps
        self.T = [G.transversal(r) for r in reps]
        self.Tinv = [G.inv(t) for t in self.T]
        action = [None if G.action[g] is None else G.action[g].components[o1] for g in emb]
        cocycle = {(s, t): G.cocycle[(emb[s], emb[t])][o1]
                   for s in range(S.order) for t in range(S.order)}
        self.J = Extension(K.factors[o1], S, action, cocycle)
        perms = [Perm(tuple(pos[self.sigma[q][o]] for o in orbit)) for q in range(Q.order)]
        self.P = closure(perms, degree=len(orbit))
        self.top = [self.P.index_of(p) for p in perms]
        self.pinv = [p.inverse() for p in perms]
        self.W = build_wreath(self.J, self.P)
        self.images_tq = [self.mu(G.transversal(q)) for q in range(Q.order)]

    def nu(self, h):
        k, q = h
        return (k[self.orbit[0]], self.stab_local[q])

    def mu(self, g):
        G = self.G
        q = g[1]
        pinv = self.pinv[q]
        f = tuple(self.nu(G.mul(G.mul(self.Tinv[i], g), self.T[pinv(i)]))
                  for i in range(len(self.orbit)))
        return (f, self.top[q])

    def beta(self, i: int, x):
        """Conjugation by ``T_i^-1``, from factor ``orbit[i]`` to ``orbit[0]``."""
        G = self.G
        g = (G.base.embed(self.orbit[i], x), G.quotient.identity_index)
        return G.mul(G.mul(self.Tinv[i], g), self.T[i])[0][self.orbit[0]]

    def beta_inv(self, i: int, y):
        G = self.G
        g = (G.base.embed(self.orbit[0], y), G.quotient.identity_index)
        return G.mul(G.mul(self.T[i], g), self.Tinv[i])[0][self.orbit[i]]

    def transport_boxes(self, q: int, kbox) -> list:
        """Image under ``mu`` of ``{k t_q : k in kbox}`` as a union of boxes."""
        f, top = self.images_tq[q]
        per_coord = []
        for i, (a, s) in enumerate(f):
            comp = None if kbox is None else kbox.components[self.orbit[i]]
            per_coord.append([ExtBox(s, b) for b in self._transport(i, comp, a)])
        return [ExtBox(top, ProductBox(tuple(c))) for c in itertools.product(*per_coord)]

    def _transport(self, i: int, box, a) -> list:
        """``{beta_i(x) a : x in box}`` as a union of boxes over the factor."""
        F = self.J.base
        if box is None:
            return [None]
        if i == 0 and F.is_identity(a):
            return [box]
        if isinstance(F, Finite):
            return [FiniteBox(frozenset(F.mul(self.beta(i, x), a) for x in box.elements))]
        if isinstance(F, FreeAbelian):
            r = F.rank
            cols = [self.beta(i, e) for e in F.generators()]

            def lin(v):
                return tuple(sum(cols[j][t] * v[j] for j in range(r)) for t in range(r))
            res = tuple(x + y for x, y in zip(lin(box.residue), a))
            return [CongruenceBox(res, tuple(lin(b) for b in box.basis))]
        if isinstance(F, Free):
            hom = box.hom
            H = hom.group
            targets = tuple(hom(self.beta_inv(i, g)) for g in F.generators())
            new = FiniteQuotientHom(H, targets)
            shift = new(a)
            return [FreeBox(new, frozenset(H.mul(z, shift) for z in box.allowed))]
        if F.order() is not None:
            # nested finite factor: one point box per element of the image
            return [point_box(F, F.mul(self.beta(i, x), a))
                    for x in F.elements() if F.in_box(x, box)]
        raise GroupEqError(f"cannot transport constraints over infinite {F.kind} factors")


def point_box(F: GroupStructure, x):
    """Structure-aligned box containing exactly ``x``."""
    if isinstance(F, Finite):
        return FiniteBox(frozenset([x]))
    if isinstance(F, DirectProduct):
        return ProductBox(tuple(point_box(C, y) for C, y in zip(F.factors, x)))
    if isinstance(F, Extension):
        return ExtBox(x[1], point_box(F.base, x[0]))
    raise GroupEqError(f"no point boxes over {F.kind}")


@dataclass
class WreathEmbedding:
    """``mu: G -> W_1 x ... x W_k`` for the orbits of the factor action."""

    G: Extension
    parts: list
    target: GroupStructure

    def mu(self, g):
        vals = tuple(p.mu(g) for p in self.parts)
        return vals if isinstance(self.target, DirectProduct) else vals[0]

    def _as_tuple(self, w):
        return w if isinstance(self.target, DirectProduct) else (w,)

    def boxes(self, q: int, kbox=None) -> list:
        parts = [p.transport_boxes(q, kbox) for p in self.parts]
        if not isinstance(self.target, DirectProduct):
            return parts[0]
        return [ProductBox(c) for c in itertools.product(*parts)]

    @property
    def image(self) -> RecSet:
        return self._union(self.boxes(q) for q in range(self.G.quotient.order))

    def transport(self, rec) -> RecSet:
        """Image under ``mu`` of a recognisable set of ``G`` (None = all)."""
        if rec is None or rec.is_whole():
            return self.image
        return self._union(self.boxes(b.q, b.k) for b in rec.boxes)

    @staticmethod
    def _union(groups) -> RecSet:
        out: list = []
        for group in groups:
            for b in group:
                if b not in out:
                    out.append(b)
        return RecSet(tuple(out))

    def pullback(self, w):
        G, T = self.G, self.target
        covered = sorted(i for p in self.parts for i in p.orbit)
        if covered != list(range(len(G.base.factors))):
            raise PullbackError("orbits do not cover every factor")
        for q in range(G.quotient.order):
            if any(T.in_box(w, b) for b in self.boxes(q)):
                break
        else:
            raise PullbackError(f"{w!r} is not in the image")
        v = self._as_tuple(T.mul(w, T.inv(self.mu(G.transversal(q)))))
        k = list(G.base.identity())
        for part, (f, top) in zip(self.parts, v):
            if top != part.P.identity_index:
                raise PullbackError("top part did not cancel")
            for i, (y, s) in enumerate(f):
                if s != part.J.quotient.identity_index:
                    raise PullbackError("stabiliser part did not cancel")
                k[part.orbit[i]] = part.beta_inv(i, y)
        g = (tuple(k), q)
        if not T.eq(self.mu(g), w):
            raise PullbackError(f"pull-back of {w!r} does not map back")
        return g

    def check_homomorphism(self, pairs) -> None:
        T = self.target
        for g, h in pairs:
            if not T.eq(self.mu(self.G.mul(g, h)), T.mul(self.mu(g), self.mu(h))):
                raise GroupEqError("embedding is not a homomorphism")


def factor_orbits(G: Extension) -> list[list[int]]:
    n = len(G.base.factors)
    seen, out = set(), []
    for i in range(n):
        if i in seen:
            continue
        orb = sorted({i} | {a.perm[i] for a in G.action if a is not None})
        # close under repeated application
        while True:
            nxt = sorted(set(orb) | {a.perm[j] for a in G.action if a is not None for j in orb})
            if nxt == orb:
                break
            orb = nxt
        seen |= set(orb)
        out.append(orb)
    return out


def _embedding(G: Extension, orbits, product_target: bool) -> WreathEmbedding:
    parts = [_OrbitPart(G, orb) for orb in orbits]
    target = DirectProduct([p.W for p in parts]) if product_target else parts[0].W
    emb = WreathEmbedding(G, parts, target)
    gens = G.generators()
    emb.check_homomorphism([(g, h) for g in gens for h in gens])
    return emb


def gross_kovacs_embed(G: Extension, orbit) -> WreathEmbedding:
    """Embed the extension into ``J wr P`` along one orbit of factors.

    ``result.target`` is the wreath product, ``result.mu`` the embedding and
    ``result.image`` its image as a recognisable set.  When the orbit does not
    cover all factors, ``mu`` forgets the other factors.
    """
    if not isinstance(G.base, DirectProduct):
        raise TypeError("base of the extension must be a direct product")
    return _embedding(G, [sorted(orbit)], product_target=False)


def embed_all(G: Extension) -> WreathEmbedding:
    """Embedding into the product of the wreath products of all orbits."""
    return _embedding(G, factor_orbits(G), product_target=True)


def solve_virtually_direct_product(G: Extension, system: System,
                                   ctx: SolverContext | None = None) -> Verdict:
    return run_entry(_pipeline, G, system, ctx)


def _pipeline(G: Extension, system: System, ctx: SolverContext) -> Verdict:
    system = resolve_twists(G, system)
    for w in system.equations + system.inequations:
        for t in w:
            if isinstance(t, Occurrence) and t.twist is not None:
                raise TwistError("the embedding pipeline accepts untwisted systems only")
    view = product_view(G)
    emb = embed_all(view)

    def mapped(w):
        return EqWord(tuple(Const(emb.mu(_wrap(view, t.value))) if isinstance(t, Const) else t
                            for t in w))

    cons = {}
    for v in system.variables:
        rec = system.constraints.get(v)
        if rec is not None and not rec.is_whole():
            rec = RecSet(tuple(_wrap_box(view, b) for b in rec.boxes))
        cons[v] = emb.transport(rec)
    wsys = System(system.variables, [mapped(w) for w in system.equations],
                  [mapped(w) for w in system.inequations], cons)
    verdict = _dispatch(emb.target, wsys, ctx)
    if not verdict.is_sat:
        return verdict
    assignment = {v: _unwrap(view, emb.pullback(x)) for v, x in verdict.assignment.items()}
    if not check_witness(system, assignment, G):
        raise WitnessError(f"pulled-back witness {assignment!r} fails the check")
    return sat(assignment)
