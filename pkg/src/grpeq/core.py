"""Data model for systems of (twisted) equations and inequations.

A word is a sequence of tokens; each token is either a constant group value
or a variable occurrence ``twist(X)^(+-1)``.  Equations assert ``word == 1``,
inequations assert ``word != 1``.  Groups are duck-typed: anything offering
``identity/mul/inv/is_identity/member/check_value`` can be evaluated over.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"


class GroupEqError(Exception):
    """Base class for errors raised by this package."""


class TwistError(GroupEqError):
    pass


class WrongGroupError(GroupEqError):
    pass


class BudgetExhausted(GroupEqError):
    pass


@dataclass(frozen=True)
class Const:
    value: Any


@dataclass(frozen=True)
class Occurrence:
    variable: str
    exponent: int = 1
    twist: Any = None  # automorphism object or None for the identity

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {self.exponent}")


Token = Const | Occurrence


@dataclass(frozen=True)
class EqWord:
    tokens: tuple = ()

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __add__(self, other: EqWord) -> EqWord:
        return EqWord(self.tokens + other.tokens)

    def variables(self) -> set[str]:
        return {t.variable for t in self.tokens if isinstance(t, Occurrence)}

    def inverse(self, group) -> EqWord:
        out = []
        for t in reversed(self.tokens):
            if isinstance(t, Const):
                out.append(Const(group.inv(t.value)))
            else:
                out.append(Occurrence(t.variable, -t.exponent, t.twist))
        return EqWord(tuple(out))


def word(*tokens) -> EqWord:
    """Build a word; bare strings become positive untwisted occurrences."""
    out = []
    for t in tokens:
        if isinstance(t, str):
            out.append(Occurrence(t))
        elif isinstance(t, (Const, Occurrence)):
            out.append(t)
        else:
            out.append(Const(t))
    return EqWord(tuple(out))


@dataclass(frozen=True)
class System:
    variables: tuple = ()
    equations: tuple = ()
    inequations: tuple = ()
    constraints: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(sorted(set(self.variables))))
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "inequations", tuple(self.inequations))
        object.__setattr__(self, "constraints", dict(self.constraints))
        declared = set(self.variables)
        for w in self.equations + self.inequations:
            missing = w.variables() - declared
            if missing:
                raise ValueError(f"undeclared variables {sorted(missing)}")
        for v in self.constraints:
            if v not in declared:
                raise ValueError(f"constraint on undeclared variable {v!r}")

    def __hash__(self):
        return hash((self.variables, self.equations, self.inequations))

    @classmethod
    def build(cls, group, variables: Iterable[str], equations=(), inequations=(), constraints=None):
        """Convenience constructor.

        Equations may be given as ``EqWord`` or as ``(lhs, rhs)`` pairs, which
        are normalised to ``lhs * rhs^-1``.
        """
        def norm(w):
            if isinstance(w, tuple) and len(w) == 2 and all(isinstance(x, EqWord) for x in w):
                return w[0] + w[1].inverse(group)
            return w
        return cls(tuple(variables), tuple(norm(w) for w in equations),
                   tuple(norm(w) for w in inequations), constraints or {})


@dataclass(frozen=True)
class Verdict:
    kind: str
    assignment: Mapping[str, Any] | None = None
    reason: str | None = field(default=None, compare=False)

    @property
    def is_sat(self) -> bool:
        return self.kind == SAT

    @property
    def is_unsat(self) -> bool:
        return self.kind == UNSAT

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN

    def __repr__(self):
        if self.kind == SAT:
            return f"SAT({dict(self.assignment)!r})"
        if self.kind == UNKNOWN:
            return f"UNKNOWN({self.reason!r})"
        return "UNSAT"


def sat(assignment: Mapping[str, Any]) -> Verdict:
    return Verdict(SAT, dict(assignment))


def unsat() -> Verdict:
    return Verdict(UNSAT)


def unknown(reason: str) -> Verdict:
    return Verdict(UNKNOWN, None, reason)


def apply_twist(twist, value):
    if twist is None:
        return value
    if not callable(twist):
        raise TwistError(f"unresolved twist {twist!r}")
    return twist(value)


def evaluate(w: EqWord, assignment: Mapping[str, Any], group) -> Any:
    acc = group.identity()
    for t in w:
        if isinstance(t, Const):
            g = t.value
        else:
            try:
                g = assignment[t.variable]
            except KeyError:
                raise ValueError(f"assignment missing variable {t.variable!r}") from None
            group.check_value(g)
            g = apply_twist(t.twist, g)
            if t.exponent < 0:
                g = group.inv(g)
        acc = group.mul(acc, g)
    return acc


def check_witness(system: System, assignment: Mapping[str, Any], group) -> bool:
    for v in system.variables:
        if v not in assignment:
            return False
    for w in system.equations:
        if not group.is_identity(evaluate(w, assignment, group)):
            return False
    for w in system.inequations:
        if group.is_identity(evaluate(w, assignment, group)):
            return False
    for v, rec in system.constraints.items():
        if not group.member(assignment[v], rec):
            return False
    return True


ANY = "any"
ALL = "all"


def combine_verdicts(verdicts: Iterable[Verdict], mode: str = ANY) -> Verdict:
    """Three-valued aggregation.

    Consumes lazily: ANY stops at the first SAT, ALL at the first UNSAT.  Both
    give the same answer as eager evaluation of the whole sequence.
    """
    first_unknown = None
    if mode == ANY:
        for v in verdicts:
            if v.is_sat:
                return v
            if v.is_unknown and first_unknown is None:
                first_unknown = v
        return first_unknown or unsat()
    if mode == ALL:
        merged: dict = {}
        for v in verdicts:
            if v.is_unsat:
                return v
            if v.is_unknown:
                if first_unknown is None:
                    first_unknown = v
                continue
            for key, val in v.assignment.items():
                if key in merged and merged[key] != val:
                    raise ValueError(f"conflicting witness values for {key!r}")
                merged[key] = val
        return first_unknown or sat(merged)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class SolverContext:
    """Budgets and counters shared by one top-level solve."""

    branch_budget: int = 10**6
    assignment_cap: int = 10**7
    free_bound: int | None = None
    branches: int = 0
    trace: Callable[[str], None] | None = None

    def tick(self, n: int = 1) -> None:
        self.branches += n
        if self.branches > self.branch_budget:
            raise BudgetExhausted("branch budget")

    def log(self, msg: str) -> None:
        if self.trace is not None:
            self.trace(msg)
        logger.debug(msg)


def run_entry(fn, structure, system, ctx):
    """Run ``fn`` with a fresh context if none was given; a budget overrun at
    top level becomes UNKNOWN, nested overruns propagate."""
    if ctx is not None:
        return fn(structure, system, ctx)
    ctx = SolverContext()
    try:
        return fn(structure, system, ctx)
    except BudgetExhausted:
        return unknown("branch budget")


def flat_name(variable: str, index: int) -> str:
    return f"{variable}#{index}"


def all_values_of(assignment: Mapping[str, Any], variables: Sequence[str]):
    return tuple(assignment[v] for v in variables)
