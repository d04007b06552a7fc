import contextlib
import io
import json
import random
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from borsuk.algebra import GeneratorSpec, build_from_presentation
from borsuk.bundle import FiberSpec
from borsuk.cli import Flags, UsageError, main, run_command
from borsuk.document import (
    DocumentParseError,
    DocumentValidationError,
    BundleDocument,
    emit_document,
    parse_document,
)
from borsuk.expr import ExprError, eval_base, parse_terms
from borsuk.report import Report

from support import random_bundle, random_vector_bundle

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "manifest.json").read_text())

MINIMAL = """\
[base]
generators = t:1:3
cap = 8

[fiber]
kind = real
n = 1

[structure]
w1 = t
"""


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text, name="doc.ini"):
    p = tmp_path / name
    p.write_text(text)
    return p


# -- expressions ---------------------------------------------------------------


def test_expression_grammar():
    alg = build_from_presentation([GeneratorSpec("s", 1, 2), GeneratorSpec("t", 1, 3)], 6)
    assert parse_terms("s t^2 + 1") == [(1, {"s": 1, "t": 2}), (1, {})]
    assert eval_base(alg, "s*t + t s") == 0
    assert eval_base(alg, "0 * t + 1") == alg.one
    assert eval_base(alg, "s^2") == 0
    for bad in ("", "t +", "2", "t^", "s - t", "u"):
        with pytest.raises(ExprError):
            eval_base(alg, bad)


# -- documents -----------------------------------------------------------------


def test_minimal_document():
    doc = parse_document(MINIMAL)
    assert doc.fiber == FiberSpec("real", 1)
    assert doc.base.cap == 8 and doc.base.dim == 3
    assert doc.bundle.w == {1: doc.base.generator("t")}
    assert doc.vector_bundle is None


def test_missing_base_is_point():
    doc = parse_document("[fiber]\nkind = complex\nn = 1\n")
    assert doc.base.dim == 1 and doc.base.cap == 24


def test_inhomogeneous_coefficient_names_field():
    text = MINIMAL.replace("w1 = t", "w2 = t")
    with pytest.raises(DocumentValidationError) as ei:
        parse_document(text)
    assert ei.value.path == "structure.w2" and ei.value.line == 10 and "w2" in str(ei.value)


def test_even_n_rejected_with_euler_message():
    with pytest.raises(DocumentValidationError) as ei:
        parse_document("[fiber]\nkind = real\nn = 4\n")
    assert "Euler" in str(ei.value) and ei.value.line == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("kind = real\n", 1),
        ("[fiber]\nkind = real\nn = three\n", 3),
        ("[fiber]\nkind = projective\nn = 3\n", 2),
        ("[fiber]\nkind = real\nn = 3\n[extra]\n", 4),
        ("[fiber]\nkind = real\nn = 3\n[structure]\nw1 = 2\n", 5),
        ("[fiber]\nkind = real\nn = 3\n[structure]\nv1 = 1\n", 5),
        ("[base]\ngenerators = t\n[fiber]\nkind = real\nn = 1\n", 2),
    ],
)
def test_parse_errors_locate_line(text, line):
    with pytest.raises(DocumentParseError) as ei:
        parse_document(text)
    assert ei.value.exit_code == 2 and ei.value.line == line


def test_quaternionic_fiber_has_no_bundle():
    with pytest.raises(DocumentValidationError):
        parse_document("[fiber]\nkind = quaternionic\nn = 1\n")


def test_stray_coefficient_key_is_violation():
    # complex n=3 has deg W1 = 8 but no basis pair needs w5
    with pytest.raises(DocumentValidationError) as ei:
        parse_document("[base]\ngenerators = t:5:2\n[fiber]\nkind = complex\nn = 3\n[structure]\nw5 = t\n")
    assert "w5" in str(ei.value)


@st.composite
def documents(draw):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    pool = [GeneratorSpec("s", 1, 2), GeneratorSpec("t", 1, 4), GeneratorSpec("u", 2, None)]
    gens = tuple(g for g in pool if draw(st.booleans()))
    base = build_from_presentation(gens, draw(st.integers(6, 14)))
    kind = draw(st.sampled_from(["real", "complex"]))
    fiber = FiberSpec(kind, draw(st.sampled_from([1, 3, 5])))
    bd = random_bundle(fiber, base, rng)
    vb = random_vector_bundle(draw(st.integers(1, 4)), base, rng) if draw(st.booleans()) else None
    return BundleDocument(gens, bd, vb)


@given(documents())
def test_emit_parse_round_trip(doc):
    text = emit_document(doc)
    back = parse_document(text)
    assert back == doc
    assert emit_document(back) == text


# -- reports -------------------------------------------------------------------


@given(
    st.recursive(
        st.none() | st.booleans() | st.integers() | st.text(max_size=8),
        lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=5), c, max_size=3),
        max_leaves=10,
    ).map(lambda v: {"value": v})
)
def test_report_json_round_trip(result):
    r = Report("bound", "00ff", result, ["a note"], [])
    assert Report.from_json(r.to_json()) == r
    assert r.to_table().startswith("# bound")


# -- command line --------------------------------------------------------------


def test_bound_example(tmp_path):
    p = write(tmp_path, "[fiber]\nkind = real\nn = 5\n[vector_bundle]\nk = 2\n")
    code, out, _ = run_cli(["bound", "--input", p, "--format", "json", "--cohom-dim-base", "0"])
    assert code == 0 and json.loads(out)["result"]["bound"] == 3


def test_charpoly_example(tmp_path):
    p = write(tmp_path, "[fiber]\nkind = real\nn = 3\n[vector_bundle]\nk = 3\n")
    code, out, _ = run_cli(["charpoly", "--input", p, "--format", "json"])
    res = json.loads(out)["result"]
    assert code == 0 and (res["W1"]["poly"], res["W2"]["poly"], res["Wprime"]["poly"]) == ("y^2", "x^2", "x^3")


def test_table_format(tmp_path):
    p = write(tmp_path, MINIMAL)
    code, out, _ = run_cli(["quotient-check", "--input", p])
    assert code == 0 and "status" in out and "equal" in out


def test_exit_codes(tmp_path):
    good = write(tmp_path, MINIMAL)
    assert run_cli(["poincare", "--input", good])[0] == 0
    code, _, err = run_cli(["charpoly", "--input", write(tmp_path, MINIMAL.replace("w1 = t", "w2 = t"), "bad.ini")])
    assert code == 1 and "w2" in err
    code, _, err = run_cli(["orbit-algebra", "--input", write(tmp_path, "[fiber]\nkind = real\nn = 4\n", "e.ini")])
    assert code == 1 and "Euler" in err
    assert run_cli(["charpoly", "--input", write(tmp_path, "[fiber\n", "p.ini")])[0] == 2
    assert run_cli(["audit", "--input", good, "--k", "1"])[0] == 2  # --max-degree missing
    assert run_cli(["membership", "--input", good])[0] == 2  # neither k nor --q
    assert run_cli(["membership", "--input", good, "--k", "1", "--q", "x +"])[0] == 2
    assert run_cli(["bound", "--input", tmp_path / "missing.ini"])[0] == 2
    with pytest.raises(SystemExit) as ei:
        run_cli(["frobnicate", "--input", good])
    assert ei.value.code == 2


def test_unknown_verb_via_api():
    with pytest.raises(UsageError):
        run_command("frobnicate", MINIMAL)


def test_bound_without_dim_on_incomplete_base_is_usage_error():
    text = "[base]\ngenerators = u:2\ncap = 6\n[fiber]\nkind = real\nn = 3\n[vector_bundle]\nk = 1\n"
    with pytest.raises(UsageError):
        run_command("bound", text)
    assert run_command("bound", text, Flags(cohom_dim_base=4)).result["bound"] == 6


def test_digest_tracks_input_and_flags():
    a = run_command("charpoly", MINIMAL)
    assert a.inputs_digest == run_command("charpoly", MINIMAL + "\n# comment\n").inputs_digest
    assert a.inputs_digest != run_command("charpoly", MINIMAL, Flags(k=1)).inputs_digest


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    argv = [case["verb"], "--input", GOLDEN / "docs" / case["doc"], "--format", "json", *case["args"]]
    first, second = run_cli(argv), run_cli(argv)
    assert first[0] == 0 and first == second
    assert first[1] == (GOLDEN / "expected" / f"{case['name']}.json").read_text()


def test_golden_covers_every_verb():
    from borsuk.cli import VERBS

    assert {c["verb"] for c in CASES} == set(VERBS)
    assert len({c["doc"] for c in CASES}) >= 8


def test_console_entry_point(tmp_path):
    p = write(tmp_path, "[fiber]\nkind = cayley\n")
    proc = subprocess.run(
        [sys.executable, "-m", "borsuk", "obstruction", "--input", str(p), "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["verdict"] == "Blocked(EulerParity)"
