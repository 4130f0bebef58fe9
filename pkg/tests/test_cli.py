from __future__ import annotations

import json
import subprocess
import sys

import pytest

from modinv.cli import main


def run_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_group_minus(capsys):
    code, doc = run_json(capsys, "group", "--q-exp", "2", "--type", "minus")
    assert code == 0
    (rec,) = doc["checks"]
    assert rec["status"] == "pass"
    assert rec["details"]["order"] == 10 and rec["details"]["brute_force_count"] == 10
    assert doc["field"]["q"] == 4


def test_noether_m5(capsys):
    code, doc = run_json(capsys, "noether", "--q-exp", "2", "--m", "5", "--max-degree", "7")
    assert code == 0
    rec = {c["name"]: c for c in doc["checks"]}["noether_number"]
    assert rec["details"]["noether_number"] == 5
    assert rec["details"]["qualifier"] == "verified up to cutoff D=7"


def test_verify_all_q4_m2(capsys):
    code, doc = run_json(capsys, "verify", "--q-exp", "2", "--m", "2", "--all")
    assert code == 0 and doc["status"] == "pass"
    names = {c["name"] for c in doc["checks"]}
    assert {"generation", "minimality", "free_module.span", "hilbert_ideal", "transfer.d", "identity.BB"} <= names


def test_failing_check_exits_one(capsys):
    code, doc = run_json(capsys, "verify", "--q-exp", "3", "--m", "2", "--free-module", "--max-degree", "10")
    assert code == 1 and doc["status"] == "fail"


def test_reported_never_fails(capsys):
    code, doc = run_json(capsys, "o2minus", "--q-exp", "2", "--max-degree", "12")
    assert code == 0
    statuses = {c["name"]: c["status"] for c in doc["checks"]}
    assert statuses["minus.m2_minimal_count"] == "reported"


def test_json_is_deterministic(capsys):
    argv = ["verify", "--q-exp", "2", "--m", "2", "--generation", "--minimality"]
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_schema_fields(capsys):
    _, doc = run_json(capsys, "verify", "--q-exp", "2", "--m", "2", "--generation")
    assert set(doc) == {"config", "field", "checks", "status", "timing"}
    rec = doc["checks"][0]
    assert set(rec) >= {"name", "anchor", "status", "degrees", "witnesses"}
    assert set(rec["degrees"][0]) >= {"d", "dim_invariants", "dim_closure"}
    assert [r["d"] for r in rec["degrees"]] == sorted(r["d"] for r in rec["degrees"])


def test_cache_never_changes_verdicts(tmp_path, capsys):
    cache = tmp_path / "dims.json"
    argv = ["dims", "--q-exp", "2", "--m", "2", "--max-degree", "8"]
    _, plain = run_json(capsys, *argv)
    _, first = run_json(capsys, *argv, "--cache", str(cache))
    assert cache.exists()
    _, second = run_json(capsys, *argv, "--cache", str(cache))
    assert plain["checks"] == first["checks"] == second["checks"]


def test_corrupt_cache_is_ignored(tmp_path, capsys, caplog):
    cache = tmp_path / "dims.json"
    cache.write_text("{not json")
    code, doc = run_json(capsys, "dims", "--q-exp", "2", "--m", "1", "--max-degree", "6", "--cache", str(cache))
    assert code == 0
    assert [r["dim_invariants"] for r in doc["checks"][0]["degrees"]] == [1, 0, 1, 1, 1, 1, 2]
    assert "ignoring unreadable cache" in caplog.text


def test_poisoned_cache_does_not_touch_verify(tmp_path, capsys):
    cache = tmp_path / "dims.json"
    cache.write_text(json.dumps({"format": "modinv-dims-1", "entries": {"q=4;modulus=7;m=2;group=plus": {"3": 99}}}))
    code, doc = run_json(capsys, "verify", "--q-exp", "2", "--m", "2", "--generation", "--cache", str(cache))
    assert code == 0
    assert doc["checks"][0]["degrees"][3]["dim_invariants"] == 4
    stored = json.loads(cache.read_text())
    assert stored["entries"]["q=4;modulus=7;m=2;group=plus"]["3"] == 4


def test_text_format(capsys):
    code = main(["group", "--q-exp", "3", "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("modinv group  q=8  status=pass")
    assert "[    pass] group.plus" in out


def test_modulus_override(capsys):
    code, doc = run_json(capsys, "group", "--q-exp", "3", "--modulus", "3,2,0")
    assert code == 0 and doc["field"]["modulus"] == [3, 2, 0]


@pytest.mark.parametrize(
    "argv",
    [
        ["group", "--q-exp", "1"],
        ["group", "--q-exp", "2", "--modulus", "2,0"],
        ["group", "--q-exp", "2", "--modulus", "a,b"],
        ["verify", "--q-exp", "2"],
        ["verify", "--q-exp", "2", "--m", "3", "--free-module"],
        ["generators", "--q-exp", "2", "--type", "minus", "--m", "2"],
        ["dims", "--q-exp", "2", "--max-degree", "-1"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_generators_listing(capsys):
    code, doc = run_json(capsys, "generators", "--q-exp", "2", "--m", "3", "--type", "sylow")
    assert code == 0
    rec = doc["checks"][0]
    assert rec["details"]["listed_minimal"] == 10


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modinv.cli", "group", "--q-exp", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
