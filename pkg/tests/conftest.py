"""Session-wide witness audit and the acceptance summary.

Every SAT verdict returned by a public solver entry point during the test
session is re-checked with ``core.check_witness``; a single violation fails
the session even if the test that produced it did not look at the witness.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import helpers  # noqa: E402


def _audited(fn, group_arg=0):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        verdict = fn(*args, **kwargs)
        if getattr(verdict, "is_sat", False):
            from grpeq.core import check_witness
            group, system = args[group_arg], args[group_arg + 1]
            if not isinstance(group, (list, tuple)):
                helpers.WITNESS_AUDIT["checked"] += 1
                if not check_witness(system, verdict.assignment, group):
                    helpers.WITNESS_AUDIT["violations"] += 1
        return verdict
    return wrapper


def pytest_configure(config):
    import grpeq
    import grpeq.combinators as comb
    import grpeq.freegrp as freegrp
    import grpeq.permfin as permfin

    for mod in (grpeq, comb):
        for name in ("solve", "solve_virtually_direct_product", "solve_direct_product",
                     "solve_extension"):
            if hasattr(mod, name):
                setattr(mod, name, _audited(getattr(mod, name)))
    freegrp.solve_free_bounded = _audited(freegrp.solve_free_bounded)
    permfin.solve_finite = _audited(permfin.solve_finite)


def pytest_terminal_summary(terminalreporter):
    tr = terminalreporter
    audit = helpers.WITNESS_AUDIT
    tr.section("witness audit")
    tr.write_line(f"SAT verdicts re-checked: {audit['checked']}, "
                  f"violations: {audit['violations']}")
    if helpers.ACCEPTANCE:
        tr.section("acceptance criteria")
        for line in helpers.ACCEPTANCE:
            tr.write_line(line)


def pytest_sessionfinish(session, exitstatus):
    if helpers.WITNESS_AUDIT["violations"] and exitstatus == 0:
        session.exitstatus = 1
