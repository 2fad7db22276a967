import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from gcconf.cli import main

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
MANIFEST = json.loads((SAMPLES / "MANIFEST.json").read_text())


def run(argv, cwd=SAMPLES):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        code = main(argv, out, err)
    finally:
        os.chdir(old)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("entry", MANIFEST, ids=lambda e: " ".join(e["args"][:2]))
def test_every_sample_passes(entry):
    code, out, err = run(entry["args"])
    assert code == entry["exit"], err or out
    report = json.loads(out)
    assert set(report) == {"operation", "inputs-digest", "result"}
    assert report["operation"] == entry["args"][0]


@pytest.mark.parametrize("entry", MANIFEST[:6] + MANIFEST[-3:], ids=lambda e: " ".join(e["args"][:2]))
def test_reports_are_byte_identical(entry):
    assert run(entry["args"]) == run(entry["args"])


def test_bracket_of_j1():
    code, out, _ = run(["bracket", "j1.json", "j1.json"])
    assert code == 0
    assert json.loads(out)["result"]["text"] == "(∂+2λ)J^1"


def test_check_virasoro_fields():
    code, out, _ = run(["check-virasoro", "t3_gc4.json"])
    res = json.loads(out)["result"]
    assert code == 0
    assert (res["is_virasoro"], res["degree"], res["is_standard"]) == (True, 2, False)


def test_is_standard_answers():
    assert json.loads(run(["is-standard", "canonical_gc2.json"])[1])["result"]["is_standard"] is True
    assert json.loads(run(["is-standard", "t3_gc4.json"])[1])["result"]["is_standard"] is False


def test_decompose_matches_recipe():
    code, out, _ = run(["decompose", "gc2_mixed.json", "--L1", "0,0", "--L2", "1,0", "--nmax", "4"])
    assert code == 0
    res = json.loads(out)["result"]
    assert res["verified_n_max"] == 4
    assert [(s["kind"], s["mult"]) for s in res["summands"]] == [("standard", 1), ("dual", 1)]


def test_digest_depends_on_options_and_contents(tmp_path):
    a = json.loads(run(["module-axioms", "gc2_mixed.json", "--nmax", "1"])[1])
    b = json.loads(run(["module-axioms", "gc2_mixed.json", "--nmax", "2"])[1])
    assert a["inputs-digest"] != b["inputs-digest"]
    # the digest hashes file contents, not the path
    (tmp_path / "copy.json").write_bytes((SAMPLES / "gc2_mixed.json").read_bytes())
    c = json.loads(run(["module-axioms", str(tmp_path / "copy.json"), "--nmax", "1"])[1])
    assert c["inputs-digest"] == a["inputs-digest"]


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_not_virasoro_exits_one(tmp_path):
    p = _write(tmp_path, "j0.json", {"N": 1, "terms": [{"n": 0, "entries": [[1, 1, [[0, 0, 0, "1"]]]]}]})
    code, out, _ = run(["check-virasoro", p])
    assert code == 1
    assert json.loads(out)["result"]["is_virasoro"] is False
    code, out, _ = run(["is-standard", p])
    assert code == 1
    assert json.loads(out)["result"]["error"]["type"] == "NotVirasoro"


def test_axiom_failure_exits_one(tmp_path):
    table = [{"n": 0, "A": [1, 1], "F": [[[[1, 0, 0, "1"]]]]}, {"n": 1, "A": [1, 1], "F": [[[[1, 0, 0, "1"], [0, 1, 0, "1"]]]]}]
    p = _write(tmp_path, "bad.json", {"algebra": "gc", "N": 1, "recipe": {"kind": "explicit", "rank": 1, "n_max": 1, "table": table}})
    code, out, _ = run(["module-axioms", p])
    res = json.loads(out)["result"]
    assert code == 1 and not res["pass"] and res["witnesses"]


def test_decompose_obstruction_exits_one(tmp_path):
    p = _write(tmp_path, "m.json", {"algebra": "gc", "N": 1, "recipe": {"kind": "explicit", "rank": 1, "n_max": 1,
               "table": [{"n": 1, "A": [1, 1], "F": [[[[1, 0, 0, "1"], [0, 1, 0, "1"]]]]}]}})
    code, out, _ = run(["decompose", p, "--L1", "0,0", "--L2", "1,0"])
    assert code == 1
    assert json.loads(out)["result"]["error"]["type"] == "PartitionViolation"


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["check-virasoro", "missing.json"], "cannot read"),
        (["check-virasoro", "{bad"], "not valid"),
        (["check-virasoro", {"N": 1}], "element: missing key 'terms'"),
        (["module-axioms", {"algebra": "gc", "recipe": {"kind": "gc_standard", "alpha": []}}], "module.recipe.alpha"),
        (["decompose", "gc1_mixed.json", "--L1", "0", "--L2", "1,0"], "--L1"),
        (["classify-deg1", "--N", "1", "--coeffs", "a"], "--coeffs"),
        (["make", {"constructor": "nope"}], "constructor"),
    ],
)
def test_input_errors_exit_two(tmp_path, argv, needle):
    argv = [(_write(tmp_path, f"in{i}.json", a) if not isinstance(a, str) or a.startswith("{") else a) for i, a in enumerate(argv)]
    code, out, err = run(argv)
    assert code == 2, out
    assert out == ""
    assert needle in err


def test_constructor_hypothesis_failure_exits_one(tmp_path):
    p = _write(tmp_path, "p.json", {"constructor": "nonstandard", "kind": "T1", "A": [[["1"]]], "B": [[["1"]]], "a": ["0"]})
    code, out, _ = run(["make", p])
    assert code == 1
    assert json.loads(out)["result"]["error"]["type"] == "ConstraintViolated"


def test_unknown_verb_exits_two():
    assert run(["frobnicate"])[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gcconf.cli", "vir-semisimple", "vir_sum.json"],
        cwd=SAMPLES, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["semisimple"] is True
    assert proc.stdout.endswith("}\n")
