import json
import os
import subprocess
import sys

import pytest

from upv.checks import ALIASES, CATALOG, RunConfig, RunContext, resolve_targets, run_checks
from upv.cli import main
from upv.report import CheckReport


def run_cli(args, env=None):
    e = dict(os.environ)
    e["PYTHONPATH"] = os.path.join(os.path.dirname(__file__), "..", "src")
    if env:
        e.update(env)
    return subprocess.run([sys.executable, "-m", "upv", *args],
                          capture_output=True, text=True, env=e)


def test_report_roundtrip_lossless():
    rep = CheckReport("cover.free_action", "pass",
                      {"points": 288, "free": True}, 12.5,
                      {"prime": 13, "nu": ["1", "2"]})
    back = CheckReport.from_json(rep.to_json(timings=True))
    assert back.check_id == rep.check_id
    assert back.status == rep.status
    assert back.witness == rep.witness
    assert back.params == rep.params
    assert back.wall_ms == 12.5


def test_catalog_ids_unique_and_runnable():
    ids = [c.check_id for c in CATALOG]
    assert len(ids) == len(set(ids))
    for cid in ids:
        assert resolve_targets([cid])[0].check_id == cid
    # the documented aliases resolve
    for alias, target in ALIASES.items():
        assert resolve_targets([alias])[0].check_id == target


def test_suite_resolution():
    assert len(resolve_targets(["all"])) == len(CATALOG)
    cover_only = resolve_targets(["cover"])
    assert all(c.check_id.startswith("cover.") for c in cover_only)
    with pytest.raises(KeyError):
        resolve_targets(["nonsense.check"])


def test_stream_determinism_byte_identical():
    cfg = RunConfig(primes=(13,))
    targets = ["unproj.plane_incidences", "grouprep.subgroup_census",
               "unproj.elimination_cubic"]
    lines1 = [r.to_json() for r in run_checks(resolve_targets(targets), RunContext(cfg))]
    lines2 = [r.to_json() for r in run_checks(resolve_targets(targets),
                                              RunContext(RunConfig(primes=(13,))))]
    assert lines1 == lines2


def test_cli_single_check_exit_zero():
    res = run_cli(["run", "unproj.plane_incidences"])
    assert res.returncode == 0
    rec = json.loads(res.stdout.strip().splitlines()[-1])
    assert rec["check"] == "unproj.plane_incidences"
    assert rec["status"] == "pass"
    assert rec["wall_ms"] == 0.0


def test_cli_alias_runs_without_enumeration():
    res = run_cli(["run", "bicanon.lambda_identity"])
    assert res.returncode == 0
    rec = json.loads(res.stdout.strip())
    assert rec["check"] == "burniat.lambda_identity"


def test_cli_bad_prime_exit_two():
    res = run_cli(["run", "cover.free_action", "--prime", "7"])
    assert res.returncode == 2
    assert "eps" in res.stderr


def test_cli_prime_five_is_accepted():
    # 5 = 1 (mod 4): eps = 2 exists, so 5 passes config validation
    res = run_cli(["run", "unproj.plane_incidences", "--prime", "5"])
    assert res.returncode == 0


def test_cli_unknown_target_exit_two():
    res = run_cli(["run", "no.such.check"])
    assert res.returncode == 2


def test_cli_list_mentions_every_check():
    res = run_cli(["list"])
    assert res.returncode == 0
    for c in CATALOG:
        assert c.check_id in res.stdout
        assert "claim:" in res.stdout


def test_cli_dump_ideal():
    res = run_cli(["dump", "ideal"])
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert len(lines) == 65
    assert all(len(line.split("\t")) == 3 for line in lines)


def test_cli_dump_points_header():
    res = run_cli(["dump", "points", "--prime", "13", "--seed", "42"])
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    head = lines[0].split()
    assert head[0] == "13"
    assert int(head[-1]) == len(lines) - 1


def test_cli_dump_hilbert_rows():
    res = run_cli(["dump", "hilbert", "--max-degree", "4"])
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    data = [l for l in lines if l and not l.startswith("#") and "degree" not in l]
    assert len(data) == 5


def test_cli_dump_unknown_artifact():
    res = run_cli(["dump", "nonsense"])
    assert res.returncode == 2


def test_cli_env_override(tmp_path):
    out = tmp_path / "r.jsonl"
    res = run_cli(["run", "unproj.plane_incidences"],
                  env={"UPV_OUTPUT": str(out)})
    assert res.returncode == 0
    assert out.read_text().strip() == res.stdout.strip()


def test_cli_config_file_and_flag_precedence(tmp_path):
    cfgfile = tmp_path / "upv.cfg"
    cfgfile.write_text("seed=5\nprimes=13\n")
    res = run_cli(["--config", str(cfgfile), "run", "unproj.elimination_cubic",
                   "--seed", "9"])
    assert res.returncode == 0
    rec = json.loads(res.stdout.strip())
    assert rec["status"] == "pass"


def test_config_validation():
    with pytest.raises(Exception):
        RunConfig(primes=(7,)).validate()
    with pytest.raises(ValueError):
        RunConfig(primes=()).validate()
    with pytest.raises(ValueError):
        RunConfig(threads=0).validate()


def test_main_entry_returns_int():
    assert main(["list"]) == 0


def test_cli_nu_override():
    res = run_cli(["run", "unproj.elimination_cubic", "--nu", "1,1,1,1,3"])
    assert res.returncode == 0
    rec = json.loads(res.stdout.strip())
    assert rec["params"]["nu"] == ["1", "1", "1", "1", "3"]


def test_cli_bad_config_key(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("frobnicate=1\n")
    res = run_cli(["--config", str(bad), "run", "unproj.plane_incidences"])
    assert res.returncode == 2


def test_cli_dump_points_deterministic():
    a = run_cli(["dump", "points", "--prime", "13", "--seed", "42"])
    b = run_cli(["dump", "points", "--prime", "13", "--seed", "42"])
    assert a.stdout == b.stdout
