"""Command-line frontend.

System files are line based::

    vars X Y
    eq X X z^-1            # X X z^-1 = 1
    eq X = Y z             # sugar for X (Y z)^-1 = 1
    neq X
    constrain X in evens   # a recset named in the group file

Tokens are ``label``, ``label^n``, ``X``, ``X^-1`` and
``twist(tag, X)`` (optionally ``^-1``); ``1`` is the identity.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Sequence

from .combinators import Extension, solve, solve_virtually_direct_product
from .core import (BudgetExhausted, Const, EqWord, GroupEqError, Occurrence, SolverContext, System,
                   check_witness, unknown)
from .zoo import load_group

EXIT = {"sat": 0, "unsat": 1, "unknown": 2}
EXIT_ERROR = 3

_TOKEN = re.compile(r"twist\(\s*([^,\s()]+)\s*,\s*([^,\s()]+)\s*\)(?:\^(-?\d+))?"
                    r"|([^\s^()]+)(?:\^(-?\d+))?")


class SystemSyntaxError(GroupEqError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _parse_tokens(text: str, lineno: int, group, variables: set) -> list:
    out: list = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise SystemSyntaxError(lineno, f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if pos < len(text) and not text[pos].isspace():
            raise SystemSyntaxError(lineno, f"unexpected {text[pos:]!r}")
        if m.group(1) is not None:
            tag, var, exp = m.group(1), m.group(2), m.group(3)
            if var not in variables:
                raise SystemSyntaxError(lineno, f"unknown variable {var!r}")
            if tag != "id" and tag not in group.automorphisms:
                raise SystemSyntaxError(lineno, f"unknown twist {tag!r}")
            n = int(exp) if exp is not None else 1
            tw = None if tag == "id" else group.automorphisms[tag]
            out.extend([Occurrence(var, 1 if n > 0 else -1, tw)] * abs(n))
            continue
        name, exp = m.group(4), m.group(5)
        n = int(exp) if exp is not None else 1
        if name in variables:
            out.extend([Occurrence(name, 1 if n > 0 else -1)] * abs(n))
        elif name in group.labels:
            g = group.labels[name]
            out.extend([Const(g if n > 0 else group.inv(g))] * abs(n))
        elif name == "1":
            continue
        else:
            raise SystemSyntaxError(lineno, f"unknown label or variable {name!r}")
    return out


def _parse_word(text: str, lineno: int, group, variables: set) -> EqWord:
    if "=" in text:
        lhs, _, rhs = text.partition("=")
        if "=" in rhs:
            raise SystemSyntaxError(lineno, "more than one '='")
        u = EqWord(tuple(_parse_tokens(lhs, lineno, group, variables)))
        v = EqWord(tuple(_parse_tokens(rhs, lineno, group, variables)))
        return u + v.inverse(group)
    return EqWord(tuple(_parse_tokens(text, lineno, group, variables)))


def parse_system(text: str, group) -> System:
    variables: list[str] = []
    equations, inequations, constraints = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vars":
            for v in rest.split():
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise SystemSyntaxError(lineno, f"bad variable name {v!r}")
                if v in group.labels:
                    raise SystemSyntaxError(lineno, f"variable {v!r} shadows a label")
                if v not in variables:
                    variables.append(v)
        elif head == "eq":
            equations.append(_parse_word(rest, lineno, group, set(variables)))
        elif head == "neq":
            inequations.append(_parse_word(rest, lineno, group, set(variables)))
        elif head == "constrain":
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "in":
                raise SystemSyntaxError(lineno, "expected 'constrain X in name'")
            var, name = parts[0], parts[2]
            if var not in variables:
                raise SystemSyntaxError(lineno, f"unknown variable {var!r}")
            if name not in group.recsets:
                raise SystemSyntaxError(lineno, f"unknown recset {name!r}")
            if var in constraints:
                raise SystemSyntaxError(lineno, f"variable {var!r} already constrained")
            constraints[var] = group.recsets[name]
        else:
            raise SystemSyntaxError(lineno, f"unknown directive {head!r}")
    return System(tuple(variables), equations, inequations, constraints)


def _format_token(t, group) -> str:
    if isinstance(t, Occurrence):
        tag = t.twist if isinstance(t.twist, str) or t.twist is None else t.twist.name
        if t.twist is not None and tag is None:
            raise ValueError("twist is not a registered automorphism")
        base = t.variable if tag is None else f"twist({tag}, {t.variable})"
        return base if t.exponent > 0 else base + "^-1"
    name = group.label_of(t.value)
    if name is not None:
        return name
    name = group.label_of(group.inv(t.value))
    if name is not None:
        return name + "^-1"
    raise ValueError(f"constant {t.value!r} has no label")


def format_system(system: System, group) -> str:
    lines = [f"vars {' '.join(system.variables)}"]
    for key, words in (("eq", system.equations), ("neq", system.inequations)):
        for w in words:
            body = " ".join(_format_token(t, group) for t in w)
            lines.append(f"{key} {body}".rstrip())
    for v, rec in sorted(system.constraints.items()):
        name = next((k for k in sorted(group.recsets) if group.recsets[k] == rec), None)
        if name is None:
            raise ValueError(f"constraint on {v!r} is not a named recset")
        lines.append(f"constrain {v} in {name}")
    return "\n".join(lines) + "\n"


def witness_literal(group, value):
    name = group.label_of(value)
    return name if name is not None else group.to_literal(value)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grpeq", description="Decide systems of equations and "
                                "inequations over structured groups.")
    p.add_argument("group", help="group file (JSON)")
    p.add_argument("system", help="system file")
    p.add_argument("--bound", type=int, default=None, help="override the free-group bound B")
    p.add_argument("--branch-budget", type=int, default=10**6)
    p.add_argument("--witness", dest="witness", action="store_true", default=True)
    p.add_argument("--no-witness", dest="witness", action="store_false")
    p.add_argument("--trace", action="store_true", help="human-readable trace on stderr")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--route", choices=["direct", "pipeline"], default="direct",
                   help="extension groups: rewrite directly or embed into wreath products")
    p.add_argument("--timing", action="store_true", help="include time_ms in the output")
    return p


def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, sort_keys=True) + "\n")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        group = load_group(args.group)
        with open(args.system, encoding="utf-8") as fh:
            system = parse_system(fh.read(), group)
        trace = (lambda msg: print(msg, file=stderr)) if args.trace else None
        ctx = SolverContext(branch_budget=args.branch_budget, free_bound=args.bound, trace=trace)
        if args.route == "pipeline":
            if not isinstance(group, Extension):
                raise GroupEqError("the pipeline route needs an extension group")
            fn = solve_virtually_direct_product
        else:
            fn = solve
        try:
            verdict = fn(group, system, ctx)
        except BudgetExhausted:
            verdict = unknown("branch budget")
    except (GroupEqError, OSError, ValueError) as exc:
        _emit({"error": str(exc)}, stdout)
        return EXIT_ERROR
    doc: dict = {"verdict": verdict.kind, "branches_explored": ctx.branches}
    if verdict.is_sat:
        if not check_witness(system, verdict.assignment, group):
            _emit({"error": "witness failed the independent check"}, stdout)
            return EXIT_ERROR
        if args.witness:
            doc["witness"] = {v: witness_literal(group, x)
                              for v, x in sorted(verdict.assignment.items())}
    if verdict.is_unknown:
        doc["reason"] = verdict.reason
    if args.timing:
        doc["time_ms"] = int((time.perf_counter() - start) * 1000)
    if args.trace:
        print(f"verdict {verdict.kind} after {ctx.branches} branches", file=stderr)
    _emit(doc, stdout)
    return EXIT[verdict.kind]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
