import json
import os
import subprocess
import sys

import pytest

from conftest import SPEC_DIR, spec_path
from exaffine.cli import run
from exaffine.specfile import SpecError, dump_spec, load_spec, parse_spec

GOOD = """# comment
type = "B2"
nullity = 2
S_generators = [[1, 0], [0, 1], [1, 1]]
L_generators = [[2, 0], [0, 1], [2, 1]]
m = 4
K = [[1, 1], [1, 0]]
"""


def test_parse_roundtrip():
    spec = parse_spec(GOOD)
    assert spec.get("type") == "B2" and spec.lines["K"] == 7
    again = parse_spec(dump_spec(spec.values))
    assert again.values == spec.values
    assert spec.descriptor().twist == 1


@pytest.mark.parametrize("text,line,msg", [
    ('type = "A2"\nnullity = 2\nfoo = 1\n', 3, "unknown key"),
    ('type = "A2"\ntype = "A2"\n', 2, "duplicate"),
    ('type = "A2"\nnullity = [1\n', 2, "bad value"),
    ('type = "A2"\nnullity 2\n', 2, "key = value"),
    ('type = "A2"\nnullity = -1\n', 2, "nonnegative"),
])
def test_parse_errors_are_line_anchored(text, line, msg):
    with pytest.raises(SpecError) as e:
        parse_spec(text, "x.spec")
    assert e.value.line == line and msg in str(e.value)
    assert str(e.value).startswith(f"x.spec:{line}:")


@pytest.mark.parametrize("patch,key", [
    ('L_generators = [[1, 0], [0, 1], [1, 1]]\ntwist = 1', "twist"),
    ('L_generators = [[2, 0], [0, 1], [2, 1]]\nK = [[0, 1], [0, 0]]\nm = 4', "K"),
    ('L_generators = [[3, 0], [0, 1], [3, 1]]', "L_generators"),
])
def test_descriptor_errors_point_at_the_key(patch, key):
    text = 'type = "B2"\nnullity = 2\nS_generators = [[1, 0], [0, 1], [1, 1]]\n' + patch + "\n"
    spec = parse_spec(text)
    with pytest.raises(SpecError) as e:
        spec.descriptor()
    assert e.value.line == spec.lines[key]


def test_missing_required():
    with pytest.raises(SpecError, match="missing required key 'S_generators'"):
        parse_spec('type = "A2"\nnullity = 2\n')


def test_exit_codes(tmp_path, capsys):
    assert run(["ears", "verify", "--spec", str(spec_path("a2n2")), "--bound", "2"]) == 0
    bad = tmp_path / "bad.spec"
    bad.write_text('type = "A2"\nnullity = 2\nS_generators = [[1, 0], [0, 1]]\n')
    assert run(["ears", "verify", "--spec", str(bad)]) == 2
    assert "bad.spec:3:" in capsys.readouterr().err
    assert run(["ears", "verify", "--spec", str(tmp_path / "none.spec")]) == 2
    assert run(["pairs", "classify", "--spec", str(spec_path("g2n2_t0")), "--bound", "1"]) == 1
    assert run(["steinberg", "verify", "--spec", str(spec_path("a2n2")), "--relations", "bogus"]) == 2
    assert run(["nonsense"]) == 2


def test_pairs_counts_printed(capsys):
    run(["pairs", "classify", "--spec", str(spec_path("g2n2_t0")), "--bound", "1"])
    out = capsys.readouterr().out
    assert "A2:" in out and "G2:" in out


def test_steinberg_report(tmp_path):
    rep = tmp_path / "out.json"
    code = run(["steinberg", "verify", "--spec", str(spec_path("b2n2_t0")), "--relations", "st2", "--report", str(rep)])
    data = json.loads(rep.read_text())
    assert code == 0 and data["passed"]
    st2 = data["result"]["relations"]["st2"]
    assert st2["instances"] > 0 and st2["failed"] == 0
    assert {"instances", "passed", "failed", "counterexamples", "extracted_constants"} <= set(st2)


def test_failure_carries_counterexample(tmp_path):
    rep = tmp_path / "out.json"
    code = run(["steinberg", "verify", "--spec", str(spec_path("g2n2_t1")), "--relations", "st2", "--report", str(rep)])
    st2 = json.loads(rep.read_text())["result"]["relations"]["st2"]
    assert code == 1
    assert st2["counterexamples"] and "alpha" in st2["counterexamples"][0]
    assert json.loads(rep.read_text())["seed"] == 0


def test_noncommutative_spec_is_skipped(tmp_path):
    rep = tmp_path / "out.json"
    assert run(["steinberg", "verify", "--spec", str(spec_path("a2n2_qt")), "--relations", "st1,st2",
                "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["result"]["skipped"] == ["st1", "st2"]


def _report(tmp_path, name, seed_env, extra=()):
    out = tmp_path / f"{name}_{seed_env}.json"
    env = dict(os.environ, PYTHONHASHSEED=seed_env)
    subprocess.run([sys.executable, "-m", "exaffine", "steinberg", "verify", "--spec", str(spec_path(name)),
                    "--relations", "st2,conj,weyl", "--samples", "20", "--report", str(out), *extra],
                   env=env, check=False, capture_output=True)
    data = json.loads(out.read_text())
    data.pop("timing")
    return json.dumps(data, sort_keys=True)


def test_determinism(tmp_path):
    assert _report(tmp_path, "a2n2_k4", "1") == _report(tmp_path, "a2n2_k4", "977")


def test_jobs_give_same_report(tmp_path):
    assert _report(tmp_path, "b2n2_t1_k4", "3") == _report(tmp_path, "b2n2_t1_k4", "3", ("--jobs", "2"))


def test_all_shipped_specs_load():
    for p in sorted(SPEC_DIR.glob("*.spec")):
        load_spec(p).descriptor()
