import io
import json
import pathlib
import subprocess
import sys

import pytest

from o2power.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden" / "table1_zp2_3.tsv"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def js(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_table1_golden():
    code, text = run("table1", "--ring", "zp2:3")
    assert code == 0
    assert text == GOLDEN.read_text()


def test_table1_json():
    code, rep = js("table1", "--format", "json")
    assert code == 0 and rep["schema"] == 1 and len(rep["rows"]) == 9


def test_factor():
    code, rep = js("factor", "--ring", "zp2:3", "--poly", "7,0,3,0,1")
    assert code == 0
    assert sorted(c["coeffs"] for c in rep["fundamental"]) == ["5,4,1", "5,5,1"]
    assert [f["coeffs"] for f in rep["reduction_factors"]] == ["2,1,1", "2,2,1"]


def test_is_l_power_exit_codes():
    code, rep = js("is-l-power", "--ring", "zp2:3", "--poly", "4,6,1", "--L", "2")
    assert code == 0 and rep["is_L_power"] and rep["factor"]
    code, rep = js("is-l-power", "--ring", "zp2:3", "--poly", "1,1", "--L", "2")
    assert code == 2 and rep["is_L_power"] is False


def test_classify_and_canonical():
    code, rep = js("classify", "--ring", "zp2:3", "--matrix", "3,1;5,0")
    assert code == 0 and rep["kind"] == "RegularSemisimple" and rep["centralizer_order"] == "72"
    code, rep = js("canonical", "--ring", "zp2:3", "--matrix", "1,1;0,1")
    assert code == 0 and rep["blocks"] == [{"coeffs": "8,1", "mult": 2}]


def test_is_power_and_root():
    code, rep = js("is-power", "--ring", "zp2:3", "--matrix", "3,1;5,0", "--L", "2", "--witness")
    assert code == 0 and rep["is_power"] and rep["witness"]
    code, rep = js("root", "--ring", "zp2:3", "--matrix", "1,0;0,2", "--L", "2")
    assert code == 2 and rep["root"] is None


def test_gcd_violation_is_usage_error(capsys):
    code, _ = run("is-power", "--ring", "zp2:3", "--matrix", "3,1;5,0", "--L", "3")
    assert code == 1
    assert "GcdLpViolation" in capsys.readouterr().err


def test_bad_ring(capsys):
    code, _ = run("classify", "--ring", "zp2:4", "--matrix", "1,0;0,1")
    assert code == 1


def test_missing_argument():
    with pytest.raises(SystemExit) as exc:
        run("classify", "--ring", "zp2:3")
    assert exc.value.code == 1


def test_genfun_and_counts():
    code, rep = js("genfun", "--family", "cs", "--q", "3", "--N", "2")
    assert rep["coefficients"][2]["numerator"] == "42"
    code, rep = js("genfun", "--family", "cs", "--q", "3", "--N", "2", "--coprime")
    assert rep["coefficients"][2]["numerator"] == "36"
    code, text = run("genfun", "--family", "s", "--q", "3", "--N", "2", "--format", "tsv")
    assert text.splitlines()[-1] == "2\t19\t24"
    code, rep = js("counts", "--q", "3", "--d", "2", "--L", "2", "--n", "2")
    assert (rep["N"], rep["N_kL"], rep["N_O2L"], rep["gl_order"]) == ("3", "1", "9", "3888")


def test_census_and_verify():
    code, rep = js("census", "--ring", "zp2:3", "--n", "2", "--L", "2")
    assert code == 0 and rep["totals"]["image"] == "1236"
    code, rep = js("census", "--ring", "zp2:3", "--n", "2", "--predicate", "families")
    assert rep["families"]["partition"] is True
    code, rep = js("verify", "--theorem", "T1", "--ring", "zp2:3", "--n", "2", "--L", "2")
    assert code == 0 and rep["mismatches"] == []
    a = run("census", "--ring", "zp2:3", "--n", "2")[1]
    assert a == run("census", "--ring", "zp2:3", "--n", "2")[1]


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "o2power.cli", "counts", "--q", "3", "--d", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["N"] == "2"
