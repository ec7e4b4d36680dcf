from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from grpeq.cli import SystemSyntaxError, format_system, parse_system, run
from grpeq.core import check_witness
from grpeq.zoo import load_group, make_dihedral_infinite, make_free_abelian

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
MANIFEST = json.loads((CORPUS / "manifest.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_sugar_matches_explicit_form():
    G = make_free_abelian(1)
    a = parse_system("vars X\neq X X = z z\n", G)
    b = parse_system("vars X\neq X X z^-1 z^-1\n", G)
    assert a == b


def test_parse_comments_powers_and_identity():
    G = make_dihedral_infinite()
    S = parse_system("# header\nvars X Y\neq X^2 = z^4   # squares\nneq Y 1\n", G)
    assert len(S.equations[0]) == 6
    assert S.inequations[0].tokens[0].variable == "Y" and len(S.inequations[0]) == 1


def test_parse_twist_resolves_to_registered_object():
    G = make_free_abelian(1)
    S = parse_system("vars X\neq twist(neg, X)^-1 X\n", G)
    tok = S.equations[0].tokens[0]
    assert tok.twist is G.automorphisms["neg"] and tok.exponent == -1


@pytest.mark.parametrize("text, line, fragment", [
    ("vars X\neq X q\n", 2, "unknown label or variable"),
    ("vars X\nfoo X\n", 2, "unknown directive"),
    ("vars X\n\neq twist(bogus, X)\n", 3, "unknown twist"),
    ("vars z\n", 1, "shadows a label"),
    ("vars X\neq X = z = z\n", 2, "more than one"),
    ("vars X\nconstrain X in nowhere\n", 2, "unknown recset"),
    ("vars X\nconstrain X evens\n", 2, "expected"),
    ("vars 9X\n", 1, "bad variable name"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    G = load_group(CORPUS / "groups" / "z.json")
    with pytest.raises(SystemSyntaxError) as info:
        parse_system(text, G)
    assert info.value.line == line and fragment in str(info.value)


@pytest.mark.parametrize("entry", MANIFEST, ids=lambda e: Path(e["system"]).stem)
def test_round_trip_parsing(entry):
    G = load_group(CORPUS / entry["group"])
    S = parse_system((CORPUS / entry["system"]).read_text(), G)
    text = format_system(S, G)
    assert parse_system(text, G) == S
    assert format_system(parse_system(text, G), G) == text


@pytest.mark.parametrize("entry", MANIFEST, ids=lambda e: Path(e["system"]).stem)
def test_corpus_verdicts(entry):
    g, s = CORPUS / entry["group"], CORPUS / entry["system"]
    code, out, _ = call(g, s)
    doc = json.loads(out)
    assert doc["verdict"] == entry["verdict"]
    assert code == {"sat": 0, "unsat": 1, "unknown": 2}[entry["verdict"]]
    assert "time_ms" not in doc
    if doc["verdict"] == "sat":
        G = load_group(g)
        S = parse_system(s.read_text(), G)
        assign = {v: G.labels[x] if isinstance(x, str) and x in G.labels else G.from_literal(x)
                  for v, x in doc["witness"].items()}
        assert check_witness(S, assign, G)
    assert call(g, s)[1] == out


def test_output_is_single_sorted_line():
    code, out, _ = call(CORPUS / "groups/z.json", CORPUS / "systems/z_even_nonzero.sys")
    assert out.count("\n") == 1
    doc = json.loads(out)
    assert out == json.dumps(doc, sort_keys=True) + "\n"


def test_timing_flag():
    _, out, _ = call(CORPUS / "groups/z.json", CORPUS / "systems/z_twist.sys", "--timing")
    assert isinstance(json.loads(out)["time_ms"], int)


def test_no_witness_flag():
    _, out, _ = call(CORPUS / "groups/z.json", CORPUS / "systems/z_twist.sys", "--no-witness")
    assert "witness" not in json.loads(out)


def test_trace_goes_to_stderr():
    _, out, err = call(CORPUS / "groups/z.json", CORPUS / "systems/z_twist.sys", "--trace")
    assert "verdict" in err and json.loads(out)["verdict"] == "sat"


def test_bound_override_changes_unknown_reason():
    _, out, _ = call(CORPUS / "groups/f2.json", CORPUS / "systems/f2_commutator.sys",
                     "--bound", "1")
    doc = json.loads(out)
    assert doc["verdict"] == "unknown" and "B=1" in doc["reason"]


def test_branch_budget_gives_unknown():
    code, out, _ = call(CORPUS / "groups/dinf.json", CORPUS / "systems/dinf_square.sys",
                        "--branch-budget", "0")
    assert code == 2 and json.loads(out)["reason"] == "branch budget"


def test_pipeline_route_matches_direct():
    for name in ("dinf_square", "dinf_odd", "swapz_square", "swapc2_square"):
        entry = next(e for e in MANIFEST if Path(e["system"]).stem == name)
        direct = call(CORPUS / entry["group"], CORPUS / entry["system"])
        piped = call(CORPUS / entry["group"], CORPUS / entry["system"], "--route", "pipeline")
        assert direct[0] == piped[0]


def test_pipeline_route_needs_extension():
    code, out, _ = call(CORPUS / "groups/z.json", CORPUS / "systems/z_twist.sys",
                        "--route", "pipeline")
    assert code == 3 and "error" in json.loads(out)


def test_errors_exit_three(tmp_path):
    code, out, _ = call(tmp_path / "missing.json", CORPUS / "systems/z_twist.sys")
    assert code == 3 and "error" in json.loads(out)
    bad = tmp_path / "bad.sys"
    bad.write_text("vars X\neq X w\n")
    code, out, _ = call(CORPUS / "groups/z.json", bad)
    assert code == 3 and "line 2" in json.loads(out)["error"]
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, out, _ = call(broken, CORPUS / "systems/z_twist.sys")
    assert code == 3 and "line 1" in json.loads(out)["error"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "grpeq.cli", str(CORPUS / "groups/c2.json"),
                           str(CORPUS / "systems/c2_square.sys")], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "sat"


def test_parse_examples():
    from grpeq.core import Const, Occurrence
    Z = make_free_abelian(1)
    S = parse_system("vars X\neq X X z^-1", Z)
    assert S.equations[0].tokens == (Occurrence("X"), Occurrence("X"), Const((-1,)))
    S = parse_system("vars X\nneq X", Z)
    assert S.inequations[0].tokens == (Occurrence("X"),) and not S.equations
    D = make_dihedral_infinite()
    S = parse_system("vars X\neq twist(neg, X) X", D.base)
    tok = S.equations[0].tokens[0]
    assert tok.twist == D.base.automorphisms["neg"]


def test_empty_equation_is_accepted():
    S = parse_system("vars X\neq\n", make_free_abelian(1))
    assert len(S.equations) == 1 and len(S.equations[0]) == 0
