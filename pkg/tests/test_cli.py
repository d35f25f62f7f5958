import json
import os
import subprocess
import sys

PKG = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_cli(args, env_extra=None, clean_env=False):
    if clean_env:
        env = {"PATH": os.environ.get("PATH", "/usr/bin:/bin")}
    else:
        env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    env.setdefault("PYTHONPATH", os.path.join(PKG, "src"))
    return subprocess.run(
        [sys.executable, "-m", "srak.cli"] + args,
        capture_output=True,
        text=True,
        env=env,
        cwd=PKG,
        timeout=600,
    )


def test_typea_report_and_determinism(tmp_path):
    args = ["cherednik", "typea", "--n", "5", "--c", "1/2"]
    r1 = run_cli(args)
    assert r1.returncode == 0, r1.stderr
    r2 = run_cli(args)
    assert r1.stdout == r2.stdout  # byte-identical reports
    data = json.loads(r1.stdout)
    pred = data["checks"][0]["data"]
    assert pred["ideal_count"] == 2
    assert [e["subgroup"] for e in pred["ideal_chain"]] == ["S2", "S2 x S2"]
    assert "wall" not in r1.stdout


def test_typea_simple_case():
    r = run_cli(["cherednik", "typea", "--n", "3", "--c", "2/7"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["checks"][0]["data"]["simple"] is True


def test_malformed_rational_exits_2():
    r = run_cli(["cherednik", "typea", "--n", "5", "--c", "1/0"])
    assert r.returncode == 2
    r = run_cli(["cherednik", "scan", "--builtin", "symmetric:2:reflection", "--c-list", "1/0", "--cutoff", "2"])
    assert r.returncode == 2


def test_compute_error_exits_3(tmp_path):
    spec = tmp_path / "group.json"
    spec.write_text(json.dumps({"builtin": {"type": "symmetric", "n": 2, "rep": "reflection"}, "gen_names": ["s"]}))
    # base point of the wrong dimension: a computational precondition failure
    r = run_cli(["be-iso", "verify", "--group", str(spec), "--b", "1,2", "--c", "generic", "--order", "4"])
    assert r.returncode == 3


def test_scan_builtin_and_preset():
    r = run_cli(["cherednik", "scan", "--builtin", "symmetric:2:reflection", "--c-list", "half_integers", "--cutoff", "6"])
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    verdicts = {c["name"]: c["data"]["verdict"] for c in data["checks"]}
    assert verdicts == {
        "c=1/2": "finite",
        "c=-1/2": "finite",
        "c=3/2": "finite",
        "c=-3/2": "finite",
        "c=5/2": "finite",
        "c=-5/2": "finite",
    }


def test_scan_respects_thread_env():
    base = ["cherednik", "scan", "--builtin", "symmetric:2:reflection", "--c-list", "1/2,1/3", "--cutoff", "4"]
    r1 = run_cli(base)
    r2 = run_cli(base, env_extra={"SRAK_THREADS": "2"})
    assert r1.returncode == 0 and r2.returncode == 0
    assert r1.stdout == r2.stdout  # deterministic merge order


def test_group_analyze(tmp_path):
    spec = tmp_path / "s3.json"
    spec.write_text(json.dumps({"builtin": {"type": "symmetric", "n": 3, "rep": "reflection"}}))
    r = run_cli(["group", "analyze", "--group", str(spec)])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    by_name = {c["name"]: c for c in data["checks"]}
    assert by_name["order"]["data"]["order"] == 6
    assert by_name["reflections"]["data"]["count"] == 3
    assert by_name["orbit_form_weights"]["data"]["m"] == ["3/2"]


def test_sra_normalize_and_mul():
    # canonical print order: graded-lex monomials, then group elements by
    # their matrix key (the reflection sorts before the identity)
    r = run_cli(["sra", "normalize", "--group", "symmetric:2:reflection", "--expr", "y*x"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["checks"][0]["data"]["result"] == "-2*c1*s + t + x*y"
    r = run_cli(["sra", "mul", "--group", "symmetric:2:reflection", "--lhs", "y", "--rhs", "x"])
    assert json.loads(r.stdout)["checks"][0]["data"]["result"] == "-2*c1*s + t + x*y"


def test_sra_center_cli():
    r = run_cli(["sra", "center", "--group", "symmetric:2:reflection", "--deg", "2"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    basis = data["checks"][0]["data"]
    assert basis["graded_dims"] == [1, 0, 3]
    assert "-c1*s + x*y" in basis["elements"]


def test_sra_poisson_cli():
    r = run_cli(["sra", "poisson", "--group", "symmetric:2:reflection", "--lhs", "x^2", "--rhs", "y^2"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["checks"][0]["data"]["result"] == "4*c1*s - 4*x*y"


def test_be_iso_cli():
    r = run_cli(["be-iso", "verify", "--group", "symmetric:2:reflection", "--b", "1", "--c", "generic", "--order", "4"])
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    verdicts = {c["name"]: c["verdict"] for c in data["checks"]}
    assert verdicts["y_x_commutator"] == "pass"
    assert verdicts["parameter_free_baseline"] == "pass"
    assert verdicts["second_scaling"] == "pass"


def test_simplicity_lattice_cli():
    r = run_cli(["simplicity", "lattice", "--group", "symmetric:2:reflection", "--c-cher", "3/2"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    by_name = {c["name"]: c["data"] for c in data["checks"]}
    assert by_name["lattice"]["generators"] == [["-1"], ["1"]]
    assert by_name["gate"]["candidate_nonsimple"] is True
    assert by_name["gate"]["conversion"] == "-2"
    r2 = run_cli(["simplicity", "lattice", "--group", "symmetric:2:reflection", "--c-cher", "1/3"])
    assert json.loads(r2.stdout)["checks"][1]["data"]["candidate_nonsimple"] is False


def test_centralizer_selftest_cli(tmp_path):
    g = tmp_path / "s3.json"
    g.write_text(json.dumps({"builtin": {"type": "symmetric", "n": 3, "rep": "reflection"}}))
    h = tmp_path / "s2.json"
    # the rank-one doubled group embeds in the rank-two one via... it does
    # not; use the trivial subgroup instead through the same spec mechanism
    h.write_text(json.dumps({"dim_h": 2, "generators_on_h": [[["1", "0"], ["1", "-1"]]]}))
    r = run_cli(["centralizer", "selftest", "--g", str(g), "--h", str(h)])
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert all(c["verdict"] == "pass" for c in data["checks"])


def test_out_file_and_env_insensitivity(tmp_path):
    out = tmp_path / "report.json"
    r = run_cli(["cherednik", "typea", "--n", "4", "--c", "1/4", "--out", str(out)])
    assert r.returncode == 0
    text1 = out.read_text()
    r2 = run_cli(["cherednik", "typea", "--n", "4", "--c", "1/4"], clean_env=True)
    assert r2.returncode == 0
    assert r2.stdout.rstrip("\n") == text1.rstrip("\n")


def test_selftest_cli_quick():
    r = run_cli(["selftest", "--quick"])
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert all(c["verdict"] != "fail" for c in data["checks"])
    assert "overall: PASS" in r.stderr


def test_sra_center_sample_flag():
    r = run_cli(["sra", "center", "--group", "symmetric:2:reflection", "--deg", "2", "--sample"])
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["checks"][0]["data"]["graded_dims"] == [1, 0, 3]
    assert "sample(" in data["command"]


def test_unknown_spec_field_exit(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({"builtin": {"type": "symmetric", "n": 2}, "bogus": True}))
    r = run_cli(["group", "analyze", "--group", str(spec)])
    assert r.returncode == 3  # structural group error
