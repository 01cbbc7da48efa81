import json
import subprocess
import sys

import pytest

SHOWCASE = """field: GF(2)
vars: x, y
truncation: 10
gen: x^2 + y^3 @ 2
"""

NONSING = """field: GF(2)
vars: x, y
truncation: 10
gen: x @ 1
gen: y^2 @ 2
"""


def run_cli(*args, check=True):
    return subprocess.run([sys.executable, "-m", "idfilt.cli", *args],
                          capture_output=True, text=True, check=check)


@pytest.fixture
def showcase_file(tmp_path):
    p = tmp_path / "showcase.txt"
    p.write_text(SHOWCASE, encoding="utf-8")
    return str(p)


@pytest.fixture
def nonsing_file(tmp_path):
    p = tmp_path / "nonsing.txt"
    p.write_text(NONSING, encoding="utf-8")
    return str(p)


def test_analyze_json_showcase(showcase_file):
    out = run_cli("analyze", showcase_file, "--json")
    rep = json.loads(out.stdout)
    assert rep["leading"]["sigma"] == [2, 1, 1]
    assert rep["leading"]["lgs"] == [{"h": "x^2 + y^3", "e": 1, "level": 2}]
    assert rep["mu"]["mu_tilde"] == {"value": 2}
    assert rep["nonsingularity"]["applicable"] is False


def test_analyze_char0_analog(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text(SHOWCASE.replace("GF(2)", "QQ"), encoding="utf-8")
    rep = json.loads(run_cli("analyze", str(p), "--json").stdout)
    assert rep["leading"]["sigma"] == [1]
    assert rep["leading"]["lgs"][0]["e"] == 0


def test_analyze_empty_gens(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("field: GF(2)\nvars: x, y\ntruncation: 6\n", encoding="utf-8")
    rep = json.loads(run_cli("analyze", str(p), "--json").stdout)
    assert rep["leading"]["sigma"] == [2, 2]
    assert rep["mu"]["mu_p"] == "infinity"
    assert rep["mu"]["in_support"] is True


def test_analyze_nonsingularity_pipeline(nonsing_file):
    rep = json.loads(run_cli("analyze", nonsing_file, "--json").stdout)
    assert rep["saturation"]["b_probe"]["added"] == [
        {"poly": "y", "level": "1", "witness_n": 2}]
    assert rep["nonsingularity"]["passed"] is True
    assert [e["level"] for e in rep["leading"]["lgs"]] == [1, 1]


def test_analyze_byte_identical(showcase_file):
    a = run_cli("analyze", showcase_file, "--json").stdout
    b = run_cli("analyze", showcase_file, "--json").stdout
    assert a == b


def test_kernel_backends_agree(showcase_file, nonsing_file):
    # the numba kernel and the numpy fallback must be indistinguishable
    import os
    env = dict(os.environ)
    env["IDFILT_NO_NUMBA"] = "1"
    for spec in (showcase_file, nonsing_file):
        fast = run_cli("analyze", spec, "--json").stdout
        slow = subprocess.run([sys.executable, "-m", "idfilt.cli", "analyze",
                               spec, "--json"], capture_output=True, text=True,
                              check=True, env=env).stdout
        assert fast == slow


def test_text_rendering_is_default(showcase_file):
    out = run_cli("analyze", showcase_file)
    assert "sigma" in out.stdout and "{" not in out.stdout.splitlines()[0]


def test_saturate_sigma_mu_subcommands(showcase_file):
    sat = json.loads(run_cli("saturate", showcase_file, "--json").stdout)
    assert {"poly": "y^2", "level": "1"} in sat["saturation"]["d"]
    sig = json.loads(run_cli("sigma", showcase_file, "--json").stdout)
    assert sig["leading"]["sigma"] == [2, 1, 1]
    mu = json.loads(run_cli("mu", showcase_file, "--json").stdout)
    assert mu["mu"]["mu_tilde"] == {"value": 2}
    assert mu["mu"]["mu_p"] == {"value": 1}


def test_trunc_override(showcase_file):
    rep = json.loads(run_cli("analyze", showcase_file, "--json",
                             "--trunc", "8").stdout)
    assert rep["precision"]["D"] == 8


def test_candidates_file(tmp_path, nonsing_file):
    cand = tmp_path / "cands.txt"
    cand.write_text("y @ 1\n", encoding="utf-8")
    rep = json.loads(run_cli("analyze", nonsing_file, "--json",
                             "--candidates", str(cand)).stdout)
    assert rep["nonsingularity"]["passed"] is True


def test_candidate_workflow_three_vars(tmp_path):
    # the probe pool only roots whole generators; a combination like x^3
    # inside the level ideal needs a user candidate, which then certifies
    base = ("field: GF(3)\nvars: x, y, z\ntruncation: 9\n"
            "gen: x^3 + y^2*z @ 3\ngen: z^2 @ 2\n")
    p = tmp_path / "s.txt"
    p.write_text(base, encoding="utf-8")
    rep = json.loads(run_cli("analyze", str(p), "--json").stdout)
    assert rep["nonsingularity"]["passed"] is False
    assert "candidates" in rep["nonsingularity"]["all_level_one"]["diagnosis"]
    p.write_text(base + "candidate: x @ 1\n", encoding="utf-8")
    rep2 = json.loads(run_cli("analyze", str(p), "--json").stdout)
    assert rep2["nonsingularity"]["passed"] is True
    assert [e["level"] for e in rep2["leading"]["lgs"]] == [1, 1, 1]


def test_spec_error_exit(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("field: GF(6)\nvars: x\ntruncation: 4\n", encoding="utf-8")
    out = run_cli("analyze", str(p), check=False)
    assert out.returncode != 0
    assert "E_FIELD" in out.stderr
