import json

import pytest
from click.testing import CliRunner

from schurzeta.cli import main

try:
    RUNNER = CliRunner(mix_stderr=False)
except TypeError:  # newer click keeps the streams apart already
    RUNNER = CliRunner()


def run(*args):
    return RUNNER.invoke(main, list(args), catch_exceptions=False)


def test_bernoulli_csv():
    r = run("bernoulli", "--shape", "1", "--k", "[[1]]", "--kind", "B", "--orders", "4", "--format", "csv")
    assert r.exit_code == 0
    rows = r.stdout.splitlines()
    assert rows[0] == "m_1,numerator,denominator"
    assert rows[1:] == ["0,1,1", "1,1,2", "2,1,6", "3,0,1", "4,-1,30"]
    assert "\r" not in r.stdout


def test_bernoulli_c_json():
    r = run("bernoulli", "--shape", "1", "--k", "[[1]]", "--kind", "C", "--orders", "3")
    values = [v["value"] for v in json.loads(r.stdout)["values"]]
    assert values == ["1/1", "-1/2", "1/6", "0/1"]


def test_malformed_tableau_exit_two():
    r = run("bernoulli", "--shape", "2,1", "--k", "[[1,1]]")
    assert r.exit_code == 2
    assert "(2,1)" in r.stderr


def test_bad_shape_exit_two():
    assert run("bernoulli", "--shape", "1,2", "--k", "[[1],[1,1]]").exit_code == 2
    assert run("bernoulli", "--shape", "1").exit_code == 2


def test_zeta_eval():
    r = run("zeta", "eval", "--shape", "1,1", "--s", "[[1],[2]]")
    assert r.exit_code == 0
    assert round(json.loads(r.stdout)["value"], 7) == 1.2020569


def test_zeta_domain_exit_three():
    r = run("zeta", "eval", "--shape", "2", "--s", "[[2,1]]")
    assert r.exit_code == 3
    assert "domain" in r.stderr


def test_zeta_decompose():
    r = run("zeta", "decompose", "--shape", "2", "--s", "[[a,b]]")
    assert json.loads(r.stdout)["terms"] == ["+(a,b)", "+(a+b)"]
    r = run("zeta", "decompose", "--shape", "1,1", "--s", "[[a],[c]]", "--star")
    assert sorted(json.loads(r.stdout)["terms"]) == ["+(a,c)", "-(a+c)"]


def test_zeta_via_decomposition():
    direct = json.loads(run("zeta", "eval", "--shape", "2,1", "--s", "[[1,2],[2]]").stdout)
    via = json.loads(run("zeta", "via-decomposition", "--shape", "2,1", "--s", "[[1,2],[2]]").stdout)
    assert abs(direct["value"] - via["value"]) <= direct["bound"] + via["bound"]


def test_xi_commands():
    r = run("xi", "--shape", "1", "--k", "[[1]]", "--s", "1")
    assert abs(json.loads(r.stdout)["value"] - 1.6449340668482264) < 1e-6
    r = run("xi", "--shape", "1", "--k", "[[1]]", "--s", "-1")
    assert json.loads(r.stdout) == {"bound": "0/1", "method": "table-lookup", "value": "1/2"}


def test_eta_commands():
    r = run("eta", "--shape", "2,1", "--k", "[[1,1],[1]]", "--s", "-1,-1")
    assert json.loads(r.stdout)["value"] == "1/4"
    r = run("eta", "--shape", "1", "--k", "[[2]]", "--s", "1")
    assert abs(json.loads(r.stdout)["value"] - 2.4041138063191885) < 1e-8
    assert run("eta", "--shape", "2,1", "--k", "[[1,1],[1]]", "--s", "1,1").exit_code == 3


@pytest.mark.parametrize("args", [
    ("verify", "stirling-hook", "--shape", "2,1", "--orders", "6"),
    ("verify", "decomposition", "--shape", "2,1", "--tol", "1e-6"),
    ("verify", "bc-binomial", "--max-weight", "3", "--orders", "3", "--samples", "3"),
    ("verify", "leading-coefficient", "--shape", "2,1,1"),
])
def test_verify_passes(args):
    r = run(*args)
    assert r.exit_code == 0, r.stdout
    out = json.loads(r.stdout)
    assert out["passed"] and out["checked"] > 0


def test_verify_unknown_identity():
    assert run("verify", "no-such-identity").exit_code == 2


def test_verify_output_is_byte_stable(tmp_path):
    args = ("verify", "hook-recurrence", "--shape", "2,1", "--orders", "3")
    a, b = run(*args).stdout, run(*args).stdout
    assert a == b
    assert "time" not in json.loads(a)


def test_config_overrides_defaults(tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("# table settings\nkind = C\norders = 2\nformat = csv\n")
    r = run("--config", str(cfg), "bernoulli", "--shape", "1", "--k", "[[1]]")
    assert r.stdout.splitlines()[1:] == ["0,1,1", "1,-1,2", "2,1,6"]
    r = run("--config", str(cfg), "bernoulli", "--shape", "1", "--k", "[[1]]", "--orders", "1")
    assert len(r.stdout.splitlines()) == 3


def test_bad_config_line(tmp_path):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("orders 2\n")
    assert run("--config", str(cfg), "bernoulli", "--shape", "1", "--k", "[[1]]").exit_code == 2


def test_cache_hit_returns_identical_bytes(tmp_path):
    args = ("--cache-dir", str(tmp_path), "bernoulli", "--shape", "2,1", "--k", "[[1,2],[2]]", "--orders", "3")
    first = run(*args)
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].name.startswith("bernoulli-")
    mtime = files[0].stat().st_mtime_ns
    second = run(*args)
    assert first.stdout == second.stdout == files[0].read_text()
    assert files[0].stat().st_mtime_ns == mtime


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SCHURZETA_CACHE_DIR", str(tmp_path))
    run("bernoulli", "--shape", "1", "--k", "[[1]]", "--orders", "2")
    assert len(list(tmp_path.iterdir())) == 1


def test_output_file(tmp_path):
    out = tmp_path / "b.csv"
    r = run("bernoulli", "--shape", "1", "--k", "[[1]]", "--orders", "2", "--format", "csv", "--output", str(out))
    assert r.stdout == ""
    assert out.read_bytes().endswith(b"2,1,6\n")
