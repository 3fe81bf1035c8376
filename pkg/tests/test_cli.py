import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from polyext import api
from polyext.algebra import FgAbGroup
from polyext.cli import EXT_RESULT_SCHEMA, graded_from_json, result_from_json, result_to_json, run

from golden import SYMMETRIC_TABLE, symmetric_row


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_ext_json_matches_table_row():
    code, out, _ = call("ext", "ab", "S^5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, EXT_RESULT_SCHEMA)
    assert data["degrees"] == [
        {"i": 1, "rank": 0, "torsion": [5]},
        {"i": 2, "rank": 0, "torsion": [2]},
        {"i": 4, "rank": 0, "torsion": [2]},
    ]
    assert data["grading"] == "ext" and data["method"] == "chain"


def test_ext_text_and_csv():
    code, out, _ = call("ext", "T^1", "Gamma^1")
    assert code == 0 and out.splitlines()[0] == "Ext^*(ab, Gamma^1) = {0: Z}"
    code, out, _ = call("ext", "T^2", "S^4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["i", "rank", "torsion"], ["1", "0", "3 6"], ["2", "0", "2 2 2"]]
    code, out, _ = call("ext", "Lambda^2", "Lambda^3", "--max-degree", "6")
    assert "beyond degree 6" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["ext", "ab", "S^5"],
        ["ext", "Lambda^2", "Lambda^5", "--max-degree", "10", "--method", "both"],
        ["ext", "Lambda^3", "Lambda^4"],
        ["ext", "Lambda^2", "Lambda^1"],
        ["ext", "Lambda^3", "T^5", "--rational"],
        ["ext", "Pa^2", "T^4"],
    ],
)
def test_json_validates_and_round_trips(argv):
    code, out, _ = call(*argv, "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, EXT_RESULT_SCHEMA)
    r = result_from_json(data)
    again = result_to_json(r, data["query"]["max_degree"], data["query"]["method"])
    assert again == data


def test_table_matches_golden_copy():
    code, out, _ = call("table", "ab-sym", "--max-n", "9", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 9
    for n, data in enumerate(rows, start=1):
        jsonschema.validate(data, EXT_RESULT_SCHEMA)
        assert graded_from_json(data["degrees"]) == symmetric_row(n)


def test_table_text_rows():
    code, out, _ = call("table", "ab-sym", "--max-n", "9")
    rows = out.strip().splitlines()[1:]
    for n, line in enumerate(rows, start=1):
        expected = symmetric_row(n).format()
        assert line == f"{n}  {expected}"
    assert SYMMETRIC_TABLE[7] == {1: [7], 3: [2], 4: [6], 6: [2]}


def test_table_csv():
    code, out, _ = call("table", "ab-sym", "--max-n", "3", "--format", "csv")
    assert out.splitlines() == ["n,i,rank,torsion", "1,0,1,", "2,1,0,2", "3,1,0,3", "3,2,0,2"]


def test_stable_outputs():
    code, out, _ = call("stable", "T^3")
    assert code == 0 and "3: Q^5" in out
    code, out, _ = call("stable", "Lambda^3", "--mode", "structural", "--format", "json")
    data = json.loads(out)
    assert sorted(s["space"] for s in data["summands"]) == ["BΣ∞", "BΣ∞", "BΣ∞×BΣ3"]
    code, out, _ = call("stable", "Gamma^2", "--format", "csv")
    assert out.strip() == "i,dimension"


def test_groupcoh_outputs():
    code, out, _ = call("groupcoh", "S2", "--max-degree", "6", "--format", "json")
    data = json.loads(out)
    assert data["method"] == "bar"
    assert [d["i"] for d in data["degrees"]] == [0, 2, 4, 6]
    code, out, _ = call("groupcoh", "S3", "--max-degree", "4", "--method", "bar", "--format", "json")
    data = json.loads(out)
    assert data["degrees"] == [
        {"i": 0, "rank": 1, "torsion": []},
        {"i": 2, "rank": 0, "torsion": [2]},
        {"i": 4, "rank": 0, "torsion": [6]},
    ]
    code, out, _ = call("groupcoh", "S3", "--format", "json")
    assert json.loads(out)["method"] == "closed"
    code, out, _ = call("groupcoh", "S3", "--coeff", "sign", "--max-degree", "3")
    assert code == 0 and "Z/3" in out


def test_check_commands():
    code, out, _ = call("check", "--all")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("pairs agree")
    code, out, _ = call("check", "Lambda^2", "Lambda^4", "--max-degree", "10", "-v")
    assert code == 0 and "ok" in out


def test_exit_codes():
    assert call("ext", "Pa^0", "T^2")[0] == 1
    assert call("ext", "Foo^2", "T^2")[0] == 1
    assert call("ext", "T^2")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("ext", "T^2", "T^3", "--max-degree", "-1")[0] == 1
    assert call("check")[0] == 1
    code, _, err = call("ext", "S^2", "T^3")
    assert code == 2 and "Supported pairs" in err
    assert call("ext", "T^2", "T^3", "--method", "chain")[0] == 2
    assert call("stable", "S^3", "--mode", "structural")[0] == 2
    assert call("check", "T^2", "T^3")[0] == 2
    assert call("--help")[0] == 0


def test_mismatch_exit_code(monkeypatch):
    monkeypatch.setattr(api, "passi_closed_rank", lambda m, n: 999)
    code, out, _ = call("check", "Pa^2", "T^4")
    assert code == 3 and "MISMATCH" in out
    code, _, err = call("ext", "Pa^2", "T^4", "--method", "both")
    assert code == 3 and "disagree" in err
    assert call("check", "--all", "--max-n", "3")[0] == 3


def test_out_file(tmp_path):
    target = tmp_path / "result.json"
    code, out, _ = call("ext", "T^2", "T^3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["degrees"] == [{"i": 1, "rank": 6, "torsion": []}]
    other = tmp_path / "stable.txt"
    assert call("--out", str(other), "stable", "T^2")[0] == 0
    assert "Q^2" in other.read_text()


def test_env_default_degree(monkeypatch):
    monkeypatch.setenv("POLYEXT_MAX_DEGREE", "4")
    code, out, _ = call("ext", "Lambda^2", "Lambda^3", "--format", "json")
    data = json.loads(out)
    assert data["truncated_above"] == 4 and data["query"]["max_degree"] == 4


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polyext.cli", "ext", "ab", "S^3"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "1: Z/3" in proc.stdout and "2: Z/2" in proc.stdout
    assert FgAbGroup.cyclic(3).format() == "Z/3"
