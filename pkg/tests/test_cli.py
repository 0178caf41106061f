import json
import subprocess
import sys

import jsonschema
import pytest

from cyclofermat.cli import load_schema, run, validate_output

COMMANDS = [
    "field 7",
    "split 5 11",
    "lemma21 7",
    "descent 5 2 3",
    "descent 5 5 2",
    "frey 5 2 3 1 2",
    "frey 5 5 2 1 2 --case r_div_a --p 7 --n 0",
    "frey 7 128 1 1 3 --p 7 --n 1 --pth-power-content",
    "sunit 5 --set 2 --bound 2",
    "sunit 5 --set 2r --bound 1",
    "eligible 5",
    "eligible 29",
    "scan --max 40",
]


def run_json(cmd):
    code, out, err = run(cmd.split() + ["--json"])
    return code, (json.loads(out) if out else None), err


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(load_schema())


@pytest.mark.parametrize("cmd", COMMANDS)
def test_json_validates(cmd):
    code, doc, err = run_json(cmd)
    assert code == 0, err
    validate_output(doc)
    assert doc["schema_version"] == "1.0"
    assert doc["name"] == cmd.split()[0]
    assert doc["status"] == "ok"


@pytest.mark.parametrize("cmd", COMMANDS[:6])
def test_deterministic(cmd):
    assert run(cmd.split() + ["--json"]) == run(cmd.split() + ["--json"])


def test_global_flag_position():
    a = run(["--json", "eligible", "7"])
    b = run(["eligible", "7", "--json"])
    assert a[0] == b[0] == 0
    assert json.loads(a[1])["payload"] == json.loads(b[1])["payload"]


def test_lemma21_text():
    code, out, _ = run(["lemma21", "7"])
    assert code == 0 and "all pass" in out


def test_scan_payload():
    _, doc, _ = run_json("scan --max 31")
    assert doc["payload"]["eligible"] == [5, 7, 11, 13, 19, 23]
    assert [rec["r"] for rec in doc["payload"]["records"]] == [5, 7, 11, 13, 17, 19, 23, 29, 31]


def test_eligible_not_prime():
    code, out, err = run(["eligible", "4"])
    assert code == 2 and out == ""
    assert "4 is not prime" in err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["field"], ["split", "5"], ["descent", "5", "2"], ["frey", "5", "2", "3", "1"],
     ["sunit", "5", "--set", "3"], ["field", "x"]],
)
def test_usage_errors(argv):
    code, out, _ = run(argv)
    assert code == 2 and out == ""


@pytest.mark.parametrize(
    "argv",
    [["descent", "5", "2", "4"], ["frey", "5", "2", "3", "1", "1"], ["frey", "5", "2", "3", "1", "2", "--case", "r_div_a"],
     ["split", "5", "6"], ["field", "3"]],
)
def test_input_errors(argv):
    code, _, err = run(argv)
    assert code == 2 and err.startswith("error:")


def test_table_flag(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("5,1,a\n7,2,a\n11,1,a\n13,1,a\n")
    _, doc, _ = run_json(f"scan --max 13 --table {p}")
    assert doc["payload"]["eligible"] == [5, 11, 13]
    code, _, err = run(["scan", "--max", "20", "--table", str(p)])
    assert code == 2 and "17" in err and "19" in err


def test_bad_table(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("6,1,a\n")
    code, _, err = run(["eligible", "5", "--table", str(p)])
    assert code == 2 and ":1:" in err


def test_user_generators(tmp_path):
    gens = tmp_path / "g.txt"
    gens.write_text("2\n")
    code, out, _ = run(["sunit", "5", "--bound", "6", "--gens", str(gens), "--json"])
    doc = json.loads(out)
    validate_output(doc)
    assert code == 0
    assert doc["payload"]["completeness"] == "user_certified"
    assert doc["payload"]["disclaimer"] is None
    assert {s["lambda"] for s in doc["payload"]["solutions"]} == {"2", "-1", "1/2"}


def test_verification_failure_exit(monkeypatch):
    from cyclofermat import cli

    monkeypatch.setitem(cli.COMMANDS, "lemma21", lambda args: cli.CommandResult(False, {"r": 5, "ok": False, "checks": []}, "x"))
    code, out, _ = run(["lemma21", "5", "--json"])
    assert code == 1
    assert json.loads(out)["status"] == "failed"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclofermat", "eligible", "4"], capture_output=True, text=True
    )
    assert proc.returncode == 2 and "4 is not prime" in proc.stderr
