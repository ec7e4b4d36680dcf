"""Solvers over structured groups: dispatch, direct products, extensions."""

from __future__ import annotations

import itertools
from typing import Mapping

from ..core import (Const, EqWord, GroupEqError, Occurrence, SolverContext, System, TwistError,
                    Verdict, check_witness, flat_name, run_entry, sat, unsat)
from ..freegrp import solve_free_bounded
from ..lattice import linear_form, solve_abelian
from ..permfin import iter_solutions, solve_finite
from .structures import (DirectProduct, Extension, ExtensionAuto, FiniteAuto, FiniteBox, Finite,
                         Free, FreeAbelian, GroupStructure, ProductAuto, RecSet)


class WitnessError(GroupEqError):
    """A solver produced an assignment that fails the independent check."""


# --------------------------------------------------------------------------
# entry points


def solve(structure: GroupStructure, system: System, ctx: SolverContext | None = None) -> Verdict:
    """Decide ``system`` over ``structure``; SAT witnesses are re-checked."""
    def run(G, S, c):
        S = resolve_twists(G, S)
        v = _dispatch(G, S, c)
        if v.is_sat and not check_witness(S, v.assignment, G):
            raise WitnessError(f"witness {v.assignment!r} fails the check")
        return v
    return run_entry(run, structure, system, ctx)


def solve_direct_product(components, system: System, ctx: SolverContext | None = None) -> Verdict:
    """Solve over a direct product; factor-permuting twists are rejected."""
    G = components if isinstance(components, DirectProduct) else DirectProduct(components)
    return run_entry(lambda G, S, c: _solve_product(G, resolve_twists(G, S), c, False),
                     G, system, ctx)


def solve_extension(ext: Extension, system: System, ctx: SolverContext | None = None) -> Verdict:
    return run_entry(lambda G, S, c: _solve_extension(G, resolve_twists(G, S), c),
                     ext, system, ctx)


def resolve_twists(G: GroupStructure, system: System) -> System:
    """Replace twist tags by automorphism objects in native form; identity
    twists become None."""
    cache: dict = {}

    def fix(t):
        if isinstance(t, Const) or t.twist is None:
            return t
        key = t.twist if isinstance(t.twist, str) else id(t.twist)
        if key not in cache:
            tw = G.resolve_twist(t.twist)
            tw = None if tw is None else G.normalize_auto(tw)
            if tw is not None and _is_identity_auto(G, tw):
                tw = None
            cache[key] = tw
        return Occurrence(t.variable, t.exponent, cache[key])

    def fix_word(w):
        return EqWord(tuple(fix(t) for t in w))

    return System(system.variables, [fix_word(w) for w in system.equations],
                  [fix_word(w) for w in system.inequations], system.constraints)


def _is_identity_auto(G, tw) -> bool:
    if isinstance(tw, ProductAuto):
        return all(i == j for i, j in enumerate(tw.perm)) and all(
            c is None or _is_identity_auto(G.factors[i], c) for i, c in enumerate(tw.components))
    if isinstance(tw, FiniteAuto):
        return all(i == x for i, x in enumerate(tw.table))
    return G.is_identity_auto(tw)


def _dispatch(G: GroupStructure, system: System, ctx: SolverContext,
              allow_permuting: bool = True) -> Verdict:
    if isinstance(G, Finite):
        return solve_finite(G.group, system, ctx=ctx)
    if isinstance(G, FreeAbelian):
        return _solve_free_abelian(G, system, ctx)
    if isinstance(G, Free):
        return solve_free_bounded(G, system, ctx=ctx)
    if isinstance(G, DirectProduct):
        return _solve_product(G, system, ctx, allow_permuting)
    if isinstance(G, Extension):
        return _solve_extension(G, system, ctx)
    raise TypeError(f"no solver for {type(G).__name__}")


# --------------------------------------------------------------------------
# helpers on words


def _simplify(G: GroupStructure, tokens) -> EqWord:
    """Merge adjacent constants and drop identity constants."""
    out: list = []
    for t in tokens:
        if isinstance(t, Const):
            if out and isinstance(out[-1], Const):
                t = Const(G.mul(out.pop().value, t.value))
            if G.is_identity(t.value):
                continue
        out.append(t)
    return EqWord(tuple(out))


def _is_constant(w: EqWord) -> bool:
    return all(isinstance(t, Const) for t in w)


def _boxes(rec) -> list:
    """Box choices for one variable; ``[None]`` when unconstrained."""
    if rec is None or rec.is_whole():
        return [None]
    return list(rec.boxes)


# --------------------------------------------------------------------------
# free abelian


def _solve_free_abelian(G: FreeAbelian, system: System, ctx) -> Verdict:
    r = G.rank
    ident = [[int(i == j) for j in range(r)] for i in range(r)]

    def form(w):
        terms, const = [], [0] * r
        for t in w:
            if isinstance(t, Const):
                const = [a + b for a, b in zip(const, t.value)]
                continue
            M = ident if t.twist is None else [list(row) for row in G.normalize_auto(t.twist).matrix]
            if t.exponent < 0:
                M = [[-x for x in row] for row in M]
            terms.append((t.variable, M))
        return linear_form(terms, const, r)

    cons = {v: _boxes(rec) for v, rec in system.constraints.items()}
    return solve_abelian(r, system.variables, [form(w) for w in system.equations],
                         [form(w) for w in system.inequations], cons, ctx)


# --------------------------------------------------------------------------
# direct products


def _flatten(G: DirectProduct, w: EqWord, allow_permuting: bool) -> list[EqWord]:
    """Coordinate words of ``w``: coordinate i of ``phi(X)`` is
    ``phi_j(X#j)`` with ``j = phi.perm^-1(i)``."""
    n = len(G.factors)
    coords: list[list] = [[] for _ in range(n)]
    for t in w:
        if isinstance(t, Const):
            for i in range(n):
                coords[i].append(Const(t.value[i]))
            continue
        tw = t.twist
        if tw is None:
            for i in range(n):
                coords[i].append(Occurrence(flat_name(t.variable, i), t.exponent))
            continue
        if not isinstance(tw, ProductAuto):
            tw = G.normalize_auto(tw)
        if not allow_permuting and any(i != j for i, j in enumerate(tw.perm)):
            raise TwistError("factor-permuting twist in a direct-product system")
        for j in range(n):
            coords[tw.perm[j]].append(Occurrence(flat_name(t.variable, j), t.exponent,
                                                 tw.components[j]))
    return [_simplify(G.factors[i], coords[i]) for i in range(n)]


def _orbits(G: DirectProduct, system: System) -> list[list[int]]:
    n = len(G.factors)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in system.equations + system.inequations:
        for t in w:
            if isinstance(t, Occurrence) and isinstance(t.twist, ProductAuto):
                for j, i in enumerate(t.twist.perm):
                    a, b = find(i), find(j)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    orbits = [groups[k] for k in sorted(groups)]
    for orb in orbits:
        for i in orb[1:]:
            if not G.factors[i].same_as(G.factors[orb[0]]):
                raise TwistError(f"twist maps factor {i} onto a different factor {orb[0]}")
    return orbits


def _solve_product(G: DirectProduct, system: System, ctx: SolverContext,
                   allow_permuting: bool) -> Verdict:
    n = len(G.factors)
    variables = list(system.variables)
    orbits = _orbits(G, system)
    orbit_of = {i: k for k, orb in enumerate(orbits) for i in orb}
    eq_coords = [_flatten(G, w, allow_permuting) for w in system.equations]
    ineq_coords = [_flatten(G, w, allow_permuting) for w in system.inequations]

    # constant coordinate equations are decided now
    orbit_eqs: list[list] = [[] for _ in orbits]
    for coords in eq_coords:
        for i, cw in enumerate(coords):
            if not cw.tokens:
                continue
            if _is_constant(cw):
                return unsat()
            orbit_eqs[orbit_of[i]].append(cw)

    # an inequation with a nonidentity constant coordinate always holds;
    # otherwise only coordinates carrying variables can witness it
    ineq_choices = []
    for coords in ineq_coords:
        if any(cw.tokens and _is_constant(cw) for cw in coords):
            continue
        cands = [i for i, cw in enumerate(coords) if cw.tokens]
        if not cands:
            return unsat()
        ineq_choices.append([(i, coords[i]) for i in cands])

    memo: dict = {}
    choices = [_boxes(system.constraints.get(v)) for v in variables]
    first_unknown = None
    for box_choice in itertools.product(*choices):
        ctx.tick()
        cons: list[dict] = [{} for _ in orbits]
        for v, box in zip(variables, box_choice):
            if box is None:
                continue
            for j, comp in enumerate(box.components):
                if comp is not None:
                    cons[orbit_of[j]][flat_name(v, j)] = RecSet((comp,))
        for cover in itertools.product(*ineq_choices):
            ctx.tick()
            orbit_ineqs: list[list] = [[] for _ in orbits]
            for i, cw in cover:
                orbit_ineqs[orbit_of[i]].append(cw)

            def parts():
                for k, orb in enumerate(orbits):
                    sub = System([flat_name(v, j) for v in variables for j in orb],
                                 orbit_eqs[k], orbit_ineqs[k], cons[k])
                    key = (k, sub)
                    if key not in memo:
                        memo[key] = _dispatch(G.factors[orb[0]], sub, ctx)
                    yield memo[key]

            verdict = _all(parts())
            if verdict.is_sat:
                a = verdict.assignment
                return sat({v: tuple(a[flat_name(v, j)] for j in range(n)) for v in variables})
            if verdict.is_unknown and first_unknown is None:
                first_unknown = verdict
    return first_unknown or unsat()


def _all(verdicts) -> Verdict:
    merged: dict = {}
    first_unknown = None
    for v in verdicts:
        if v.is_unsat:
            return v
        if v.is_unknown:
            first_unknown = first_unknown or v
            continue
        merged.update(v.assignment)
    return first_unknown or sat(merged)


# --------------------------------------------------------------------------
# extensions


class _Rewriter:
    """Rewrites words over an extension into words over its base, for fixed
    quotient parts of the variables."""

    def __init__(self, G: Extension):
        self.G = G
        self._compose: dict = {}
        self._inv_q = [G.quotient.inv(q) for q in range(G.quotient.order)]

    def act_token(self, a: int, t):
        G = self.G
        if G.action[a] is None:
            return t
        if isinstance(t, Const):
            return Const(G.act(a, t.value))
        key = (a, t.twist)
        if key not in self._compose:
            self._compose[key] = G.base.compose_auto(G.action[a], t.twist)
        return Occurrence(t.variable, t.exponent, self._compose[key])

    def token(self, t, qsol: Mapping[str, int]):
        """``(base tokens, q)`` with the token's value equal to ``k * t_q``."""
        G = self.G
        K = G.base
        if isinstance(t, Const):
            k, q = t.value
            return [Const(k)], q
        tw = t.twist
        qy = qsol[t.variable]
        if tw is None:
            base_tw, shift, a = None, None, qy
        else:
            base_tw, shift, a = tw.base_auto, tw.shifts[qy], tw.qmap[qy]
        if t.exponent > 0:
            toks = [Occurrence(t.variable, 1, base_tw)]
            if shift is not None:
                toks.append(Const(shift))
            return toks, a
        # (m t_a)^-1 = c(a^-1, a)^-1 alpha_{a^-1}(m^-1) t_{a^-1}
        ai = self._inv_q[a]
        toks = [Const(K.inv(G.cocycle[(ai, a)]))]
        if shift is not None:
            toks.append(Const(G.act(ai, K.inv(shift))))
        toks.append(self.act_token(ai, Occurrence(t.variable, -1, base_tw)))
        return toks, ai

    def word(self, w: EqWord, qsol: Mapping[str, int]) -> tuple[EqWord, int]:
        G = self.G
        acc: list = []
        a = G.quotient.identity_index
        for t in w:
            toks, q = self.token(t, qsol)
            acc.extend(self.act_token(a, x) for x in toks)
            acc.append(Const(G.cocycle[(a, q)]))
            a = G.quotient.mul(a, q)
        return _simplify(G.base, acc), a


def _project(G: Extension, w: EqWord, cache: dict) -> EqWord:
    out = []
    for t in w:
        if isinstance(t, Const):
            out.append(Const(t.value[1]))
        elif t.twist is None:
            out.append(Occurrence(t.variable, t.exponent))
        else:
            tw = t.twist
            if id(tw) not in cache:
                cache[id(tw)] = (tw, FiniteAuto(tuple(tw.qmap)))
            out.append(Occurrence(t.variable, t.exponent, cache[id(tw)][1]))
    return EqWord(tuple(out))


def _solve_extension(G: Extension, system: System, ctx: SolverContext) -> Verdict:
    Q, K = G.quotient, G.base
    e = Q.identity_index
    system = _native_ext_twists(G, system)
    qcons = {}
    for v, rec in system.constraints.items():
        if rec is None or rec.is_whole():
            continue
        qcons[v] = RecSet((FiniteBox(frozenset(b.q for b in rec.boxes)),))
    cache: dict = {}
    qsys = System(system.variables, [_project(G, w, cache) for w in system.equations], (), qcons)
    rw = _Rewriter(G)
    first_unknown = None
    for qsol in iter_solutions(Q, qsys, cap=ctx.assignment_cap):
        ctx.tick()
        eqs = []
        for w in system.equations:
            kw, q = rw.word(w, qsol)
            if q != e:
                raise AssertionError("projected equation did not vanish in the quotient")
            eqs.append(kw)
        ineqs = []
        for w in system.inequations:
            kw, q = rw.word(w, qsol)
            if q == e:
                ineqs.append(kw)
        kcons = {}
        for v, rec in system.constraints.items():
            if rec is None or rec.is_whole():
                continue
            kb = [b.k for b in rec.boxes if b.q == qsol[v]]
            if any(b is None for b in kb):
                continue
            kcons[v] = RecSet(tuple(kb))
        ctx.log(f"extension branch q={qsol}")
        verdict = _dispatch(K, System(system.variables, eqs, ineqs, kcons), ctx)
        if verdict.is_sat:
            return sat({v: (verdict.assignment[v], qsol[v]) for v in system.variables})
        if verdict.is_unknown and first_unknown is None:
            first_unknown = verdict
    return first_unknown or unsat()


def _native_ext_twists(G: Extension, system: System) -> System:
    def fix(w):
        toks = []
        for t in w:
            if isinstance(t, Occurrence) and t.twist is not None and \
                    not isinstance(t.twist, ExtensionAuto):
                t = Occurrence(t.variable, t.exponent, G.normalize_auto(t.twist))
            toks.append(t)
        return EqWord(tuple(toks))
    return System(system.variables, [fix(w) for w in system.equations],
                  [fix(w) for w in system.inequations], system.constraints)
