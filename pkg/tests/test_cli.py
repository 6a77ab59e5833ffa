import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from gew.cli import main

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json", "--no-timings")
    return code, json.loads(out)


def test_example1(capsys):
    code, data = run_json(capsys, "verify", "example1")
    assert code == 0 and data["ok"] and len(data["reports"]) == 3


def test_json_is_deterministic(capsys):
    _, a = run(capsys, "verify", "example1", "--json", "--no-timings")
    _, b = run(capsys, "verify", "example1", "--json", "--no-timings")
    assert a == b and "elapsed_ms" not in a


def test_timings_present_by_default(capsys):
    _, out = run(capsys, "verify", "observation", "--group", "symmetric(3)", "--f", "s1*s2", "--json")
    assert "elapsed_ms" in out


def test_observation(capsys):
    code, data = run_json(capsys, "verify", "observation", "--group", "symmetric(3)", "--f", "s1*s2")
    assert code == 0
    assert data["reports"][0]["details"]["p"] == 3


def test_check_lee_reports_l1_failure(capsys):
    code, data = run_json(capsys, "check-lee", "--word", "[z1,z2]", "--radius", "2")
    statuses = [r["status"] for r in data["reports"]]
    assert code == 1 and statuses == ["pass", "fail", "pass"]


def test_freeproduct(capsys):
    code, data = run_json(capsys, "check-freeproduct", "--factors", "z2,z3")
    assert code == 0 and data["ok"]
    code, data = run_json(capsys, "check-freeproduct", "--factors", "z2,z2")
    assert code == 1 and data["reports"][0]["status"] == "error"


def test_surface(capsys):
    code, out = run(capsys, "check-surface", "--genus", "2", "--samples", "5", "--radius", "3")
    assert code == 0 and out.strip().endswith("3/3 checks passed")


def test_roundtrip(capsys):
    code, data = run_json(
        capsys, "roundtrip", "--system", str(SYSTEMS / "semidirect_rational.sys"),
        "--config", str(SYSTEMS / "semidirect.json"),
    )
    assert code == 0
    stages = [s["stage"] for s in data["reports"][0]["details"]["stages"]]
    assert "q-correct" in stages


def test_errors_become_reports(capsys, tmp_path):
    code, data = run_json(capsys, "verify", "observation", "--group", "symmetric(3)", "--f", "s1^")
    assert code == 1 and data["reports"][0]["status"] == "error"
    code, data = run_json(capsys, "roundtrip", "--system", str(tmp_path / "missing.sys"),
                          "--config", str(SYSTEMS / "semidirect.json"))
    assert code == 1 and "error" in data["reports"][0]["details"]


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["check-lee"])
    assert exc.value.code == 2


@pytest.mark.skipif(shutil.which("gew") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["gew", "verify", "example1"], capture_output=True, text=True)
    assert out.returncode == 0 and "3/3 checks passed" in out.stdout


def test_module_entry():
    out = subprocess.run([sys.executable, "-m", "gew.cli", "check-freeproduct", "--factors", "z2,z2"],
                         capture_output=True, text=True)
    assert out.returncode == 1
