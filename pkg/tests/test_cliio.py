import json
import subprocess
import sys
from pathlib import Path

import pytest

from catext.cliio import InputError, emit, parse, render, run

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

MINIMAL = """
field: {kind: prime, characteristic: 2}
category: {preset: trivial}
task: {command: validate}
"""

EXPLICIT_A2 = """
field: {kind: prime, characteristic: 2}
category:
  objects: ["0", "1"]
  morphisms:
    - {id: i0, dom: "0", cod: "0"}
    - {id: i1, dom: "1", cod: "1"}
    - {id: a, dom: "0", cod: "1"}
  identities: {"0": i0, "1": i1}
  compose:
    - {first: i0, then: i0, equals: i0}
    - {first: i1, then: i1, equals: i1}
    - {first: i0, then: a, equals: a}
    - {first: a, then: i1, equals: a}
algebra:
  constant: {preset: field}
bimodule: {preset: regular}
task:
  command: check-theorem-a
  caps: {p: 2, q: 2, n: 2}
"""


def test_parse_minimal():
    spec = parse(MINIMAL)
    assert spec.payload["field"] == {"kind": "prime-field", "characteristic": 2}
    assert spec.payload["task"]["command"] == "validate"


def test_parse_reports_dangling_reference_with_id():
    bad = MINIMAL.replace("{preset: trivial}", """
  objects: [x]
  morphisms: [{id: ix, dom: x, cod: x}]
  identities: {x: ix}
  compose: [{first: ix, then: ghost, equals: ix}]
""")
    with pytest.raises(InputError) as exc:
        parse(bad)
    assert any("ghost" in e for e in exc.value.errors)


def test_parse_reports_yaml_position():
    with pytest.raises(InputError) as exc:
        parse("field: {kind: prime\ncategory: bad")
    assert any("line" in e for e in exc.value.errors)


def test_parse_unknown_preset():
    with pytest.raises(InputError) as exc:
        parse(MINIMAL.replace("trivial", "moebius"))
    assert any("moebius" in e for e in exc.value.errors)


def test_roundtrip_canonical_form():
    spec = parse(EXPLICIT_A2)
    once = emit(spec)
    twice = emit(parse(once))
    assert once == twice
    assert parse(once).payload == spec.payload


def test_run_validate_on_explicit_a2():
    doc, code = run(parse(EXPLICIT_A2), command="validate")
    assert code == 0
    assert doc["validation"]["ok"]


def test_run_check_theorem_a():
    doc, code = run(parse(EXPLICIT_A2))
    assert code == 0
    assert doc["checks"]["extension-algebra-axioms"]["ok"]
    assert doc["checks"]["composition-antihomomorphism"]["passed"]


def test_build_algebra_emits_dual_numbers():
    text = """
field: {kind: rationals}
category: {preset: trivial}
algebra:
  constant: {preset: field}
bimodule: {preset: regular}
task: {command: build-algebra}
"""
    doc, code = run(parse(text))
    assert code == 0
    alg = doc["algebra"]
    assert alg["dim"] == 2
    assert alg["unit"] == ["1", "0"]
    # nonzero products of k[e]/(e^2): 1*1=1, 1*e=e, e*1=e
    assert sorted(alg["products"]) == [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]


def test_run_broken_category_exit_one():
    text = (PROBLEMS / "broken_category.yaml").read_text()
    doc, code = run(parse(text))
    assert code == 1
    assert not doc["validation"]["ok"]
    assert doc["validation"]["violations"][0]["witness"]


def test_run_corrupt_bimodule_exit_one():
    text = (PROBLEMS / "corrupt_bimodule.yaml").read_text()
    doc, code = run(parse(text))
    assert code == 1
    assert any(v["code"] == "bimodule" for v in doc["validation"]["violations"])


def test_run_lhs_report_zero_fibers():
    text = """
field: {kind: prime, characteristic: 2}
category: {preset: poset-a2}
algebra:
  constant: {preset: field}
right_module: {preset: zero}
modules:
  G: {over: gr-a, preset: constant}
  F: {over: gr-an, preset: constant}
task:
  command: lhs-report
  caps: {p: 2, q: 2, n: 2}
  weight: G
  coefficients: F
"""
    doc, code = run(parse(text))
    assert code == 0
    assert doc["report"]["verdicts"] == ["equal", "equal", "equal"]


def test_run_cohomology_routes_agree():
    doc, code = run(parse((PROBLEMS / "z2_cohomology.yaml").read_text()),
                    caps={"n": 3})
    assert code == 0
    assert doc["dims"] == [1, 1, 1, 1]
    assert doc["routes_agree"]


def test_run_ext_command():
    text = """
field: {kind: prime, characteristic: 2}
category: {preset: poset-a2}
modules:
  G: {over: base, preset: representable, at: "1"}
  F: {over: base, preset: constant}
task:
  command: ext
  caps: {n: 2}
  modules: [G, F]
"""
    doc, code = run(parse(text))
    assert code == 0
    assert doc["dims"][1:] == [0, 0]  # representable modules are projective


def test_run_missing_blocks_is_input_error():
    doc, code = run(parse(MINIMAL), command="check-extension")
    assert code == 2
    assert doc["input_errors"]


def test_rationals_rejected_for_constructions():
    text = """
field: {kind: rationals}
category: {preset: trivial}
algebra:
  constant: {preset: field}
right_module: {preset: regular}
task: {command: check-extension}
"""
    doc, code = run(parse(text))
    assert code == 2


def test_render_structured_deterministic():
    spec = parse(EXPLICIT_A2)
    doc1, _ = run(spec)
    doc2, _ = run(parse(EXPLICIT_A2))
    assert render(doc1, "structured") == render(doc2, "structured")
    json.loads(render(doc1, "structured"))  # valid JSON


def test_render_table_mentions_verdicts():
    text = (PROBLEMS / "one_object_lhs.yaml").read_text()
    doc, code = run(parse(text))
    out = render(doc, "table")
    assert "verdicts:" in out and "equal" in out


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "catext.cli", *args],
                          capture_output=True, text=True)


def test_cli_exit_codes():
    ok = _cli("lhs-report", str(PROBLEMS / "one_object_lhs.yaml"))
    assert ok.returncode == 0
    bad = _cli("validate", str(PROBLEMS / "broken_category.yaml"))
    assert bad.returncode == 1
    missing = _cli("validate", str(PROBLEMS / "no_such_file.yaml"))
    assert missing.returncode == 2


def test_cli_structured_output_parses():
    res = _cli("check-extension", str(PROBLEMS / "lemma_fiber_extension.yaml"),
               "--format", "structured")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["extension"]["ok"]


def test_cli_seed_spot_checks():
    res = _cli("validate", str(PROBLEMS / "a2_skew.yaml"), "--seed", "7",
               "--format", "structured")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["spot_checks"]["failures"] == 0


def test_cli_caps_flags():
    res = _cli("lhs-report", str(PROBLEMS / "one_object_lhs.yaml"),
               "--cap-n", "1", "--format", "structured")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert len(doc["report"]["verdicts"]) == 2
