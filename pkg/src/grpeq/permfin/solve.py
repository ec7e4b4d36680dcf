"""Exhaustive constrained search over a finite group."""

from __future__ import annotations

import itertools
from math import prod
from typing import Iterator, Mapping, Sequence

import numpy as np

from ..core import (Const, GroupEqError, SolverContext, System, TwistError, Verdict, sat, unsat)
from . import _kernels
from .group import FiniteGroup, allowed_elements

DEFAULT_ASSIGNMENT_CAP = 10**7


class AssignmentCapExceeded(GroupEqError):
    """The search space is larger than the configured cap (an input-size
    error, never a verdict)."""


class CompiledSystem:
    def __init__(self, group: FiniteGroup, system: System, registry: Mapping | None = None):
        n = group.order
        self.group = group
        self.variables = list(system.variables)
        slot = {v: i for i, v in enumerate(self.variables)}
        twist_rows = [np.arange(n, dtype=np.int64)]
        twist_index: dict = {}
        ops, starts = [], [0]
        for w in list(system.equations) + list(system.inequations):
            for t in w:
                if isinstance(t, Const):
                    group.check_value(t.value)
                    ops.append((0, int(t.value), 0))
                    continue
                tw = t.twist
                if isinstance(tw, str):
                    if registry is None or tw not in registry:
                        raise TwistError(f"unresolved twist tag {tw!r}")
                    tw = registry[tw]
                if tw is None:
                    b = 0
                else:
                    key = id(tw)
                    if key not in twist_index:
                        row = np.array([int(tw(i)) for i in range(n)], dtype=np.int64)
                        if sorted(row.tolist()) != list(range(n)):
                            raise TwistError("twist is not a bijection of the group elements")
                        twist_index[key] = len(twist_rows)
                        twist_rows.append(row)
                    b = twist_index[key]
                ops.append((1 if t.exponent > 0 else 2, slot[t.variable], b))
            starts.append(len(ops))
        self.twists = np.stack(twist_rows)
        self.ops = np.array(ops, dtype=np.int64).reshape(-1, 3)
        self.word_starts = np.array(starts, dtype=np.int64)
        self.n_eq = len(system.equations)
        doms = [sorted(allowed_elements(system.constraints.get(v), n)) for v in self.variables]
        self.domains = doms
        self.dom_vals = np.array([x for d in doms for x in d], dtype=np.int64)
        self.dom_starts = np.array([0] + list(itertools.accumulate(len(d) for d in doms)),
                                   dtype=np.int64)
        self.total = prod(len(d) for d in doms)

    def args(self, start: int, stop: int, max_hits: int):
        g = self.group
        return (g.table, g.inverse_table, np.int64(g.identity_index), self.twists, self.ops,
                self.word_starts, np.int64(self.n_eq), self.dom_vals, self.dom_starts,
                np.int64(start), np.int64(stop), np.int64(max_hits))

    def decode(self, idx: int) -> dict:
        out = {}
        for v in range(len(self.variables) - 1, -1, -1):
            d = self.domains[v]
            idx, r = divmod(int(idx), len(d))
            out[self.variables[v]] = d[r]
        return out


def iter_solutions(group: FiniteGroup, system: System, registry: Mapping | None = None,
                   cap: int = DEFAULT_ASSIGNMENT_CAP, chunk: int = 1 << 20) -> Iterator[dict]:
    """All satisfying assignments in lexicographic order, streamed."""
    comp = CompiledSystem(group, system, registry)
    if comp.total > cap:
        raise AssignmentCapExceeded(f"{comp.total} assignments exceed the cap {cap}")
    pos = 0
    while pos < comp.total:
        stop = min(comp.total, pos + chunk)
        hits = _kernels.scan(*comp.args(pos, stop, stop - pos))
        for h in hits:
            yield comp.decode(h)
        pos = stop


def solve_finite(group: FiniteGroup, system: System, registry: Mapping | None = None,
                 ctx: SolverContext | None = None, cap: int | None = None) -> Verdict:
    if cap is None:
        cap = ctx.assignment_cap if ctx is not None else DEFAULT_ASSIGNMENT_CAP
    comp = CompiledSystem(group, system, registry)
    if comp.total > cap:
        raise AssignmentCapExceeded(f"{comp.total} assignments exceed the cap {cap}")
    if comp.total == 0:
        return unsat()
    hits = _kernels.scan(*comp.args(0, comp.total, 1))
    if len(hits):
        return sat(comp.decode(hits[0]))
    return unsat()


def enumerate_assignments(group: FiniteGroup, variables: Sequence[str],
                          constraints: Mapping | None = None) -> Iterator[dict]:
    variables = sorted(variables)
    constraints = constraints or {}
    doms = [sorted(allowed_elements(constraints.get(v), group.order)) for v in variables]
    for combo in itertools.product(*doms):
        yield dict(zip(variables, combo))
