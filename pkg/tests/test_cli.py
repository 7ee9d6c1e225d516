import json

import pytest
from click.testing import CliRunner

from hochmorita.cli import main
from hochmorita.report import strip_wall_time


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def report(result):
    return json.loads(result.output)


def test_hh_dual_numbers():
    res = run("hh", "--algebra", "dual-numbers", "--max-degree", "4")
    assert res.exit_code == 0, res.output
    doc = report(res)
    assert doc["results"]["bar"] == doc["results"]["ext"] == [2, 1, 1, 1, 1]
    assert doc["summary"]["pass"] == 1 and "wall_time" in doc


def test_hh_matrices():
    doc = report(run("hh", "--algebra", "matrices-2", "--max-degree", "4", "--method", "bar"))
    assert doc["results"] == {"bar": [1, 0, 0, 0, 0]}
    assert doc["checks"] == []


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    res = run("hh", "--algebra", "rationals", "-o", str(out), "--no-time")
    assert res.exit_code == 0
    assert "wall_time" not in json.loads(out.read_text())


def test_repeated_runs_agree_apart_from_time():
    args = ("classify", "--idempotent", "upper-triangular-2-E11")
    a, b = run(*args), run(*args)
    assert a.exit_code == b.exit_code == 0
    assert strip_wall_time(a.output) == strip_wall_time(b.output)


def test_file_paths_are_accepted(tmp_path):
    p = tmp_path / "alg.json"
    p.write_text(json.dumps({"kind": "algebra", "dim": 1, "unit": ["1"],
                             "structure": [[0, 0, 0, "1"]]}))
    doc = report(run("hh", "--algebra", str(p), "--no-time"))
    assert doc["results"]["bar"] == [1, 0, 0, 0]


@pytest.mark.parametrize("args", [
    ("pierce", "--idempotent", "nakayama-A3-e1"),
    ("classify", "--idempotent", "matrices-2-E11"),
    ("ext", "--module", "dual-numbers-simple", "--max-degree", "2"),
    ("grade", "--module", "upper-triangular-2-S1"),
    ("chi", "--idempotent", "matrices-2-E11", "--cup-samples", "3"),
    ("auslander", "--module", "dual-numbers-simple", "--max-degree", "1"),
    ("skew", "--action", "split-3-shift"),
    ("invariants", "--action", "quadratic-field-galois"),
])
def test_commands_succeed(args):
    res = run(*args, "--no-time")
    assert res.exit_code == 0, res.output
    doc = report(res)
    assert doc["summary"]["fail"] == 0


def test_ext_values():
    # the dual numbers are self-injective, while Ext(S, S) is one-dimensional in every degree
    doc = report(run("ext", "--module", "dual-numbers-simple", "--max-degree", "2"))
    assert doc["results"] == {"ext_dims": [1, 0, 0]}
    doc = report(run("ext", "--module", "dual-numbers-simple",
                     "--target", "dual-numbers-simple", "--max-degree", "2"))
    assert doc["results"] == {"ext_dims": [1, 1, 1]}


def test_validate_reports_failures(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "algebra", "dim": 2, "unit": ["0", "1"],
                               "structure": [[0, 0, 0, "1"]]}))
    res = run("validate", "dual-numbers", str(bad), "--no-time")
    assert res.exit_code == 1
    statuses = sorted(c["status"] for c in report(res)["checks"])
    assert statuses == ["fail", "pass"]


def test_validate_all_fixtures():
    from hochmorita.io import fixture_names
    res = run("validate", *fixture_names(), "--no-time")
    assert res.exit_code == 0, res.output


@pytest.mark.parametrize("args", [
    ("hh", "--algebra", "no-such-fixture"),
    ("hh",),
    ("frobnicate",),
    ("suite", "--only", "nonsense"),
    ("pierce", "--algebra", "dual-numbers", "--idempotent", "dual-numbers"),
])
def test_usage_errors_exit_two(args):
    assert run(*args).exit_code == 2


def test_unparseable_scalar_exits_two(tmp_path):
    p = tmp_path / "alg.json"
    p.write_text(json.dumps({"kind": "algebra", "field": {"Fp": 3}, "dim": 1,
                             "unit": ["1"], "structure": [[0, 0, 0, "1/3"]]}))
    res = run("hh", "--algebra", str(p))
    assert res.exit_code == 2
    assert "structure" in res.output


def test_resource_cap_exits_three():
    res = run("hh", "--algebra", "matrices-2", "--max-degree", "4", "--method", "bar",
              env={"HOCHMORITA_BAR_CAP": "100"})
    assert res.exit_code == 3
    assert "HOCHMORITA_BAR_CAP" in res.output


def test_bar_cap_option():
    res = run("hh", "--algebra", "matrices-2", "--method", "bar", "--bar-cap", "10")
    assert res.exit_code == 3


def test_suite_list():
    res = run("suite", "--list")
    assert res.exit_code == 0
    assert "hh-agreement" in res.output and "relative-hh-vanishes" in res.output


def test_suite_subset():
    res = run("suite", "--only", "ring-and-pierce", "--no-time")
    assert res.exit_code == 0
    doc = report(res)
    assert doc["results"]["failed"] == [] and doc["summary"]["fail"] == 0
