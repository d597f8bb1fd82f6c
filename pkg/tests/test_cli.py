from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from dquant.cli import run

SCHEMA = json.loads(resources.files("dquant").joinpath("schema/output-v1.json").read_text())


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code = run([*argv, "--json"])
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def frac(rec: dict) -> str:
    return rec["numerator"] if rec["denominator"] == "1" else f"{rec['numerator']}/{rec['denominator']}"


def test_star_json(capsys):
    code, doc = run_json(capsys, "star", "x", "y")
    assert code == 0 and doc["status"] == "pass"
    coeffs = doc["result"]["product"]["coefficients"]
    assert coeffs[0] == [{"exponents": [1, 1], "numerator": "1", "denominator": "1"}]
    assert coeffs[1] == [{"exponents": [0, 0], "numerator": "-1", "denominator": "2"}]


def test_star_explicit_matrix(capsys):
    code = run(["star", "--pi", "0,1;-1,0", "--vars", "p,q", "--order", "2", "p^2", "q^2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "hbar^1: 2*p*q" in out and "hbar^2: 1/2" in out


def test_star_with_gauge(capsys):
    code, doc = run_json(capsys, "star", "--gamma", "1,0;0,0", "x", "x")
    # the symmetric part contributes hbar/2 * gamma^{xx}
    assert code == 0
    assert doc["result"]["product"]["coefficients"][1] == [{"exponents": [0, 0], "numerator": "1", "denominator": "2"}]


def test_wkb_catalan_row(capsys):
    code, doc = run_json(capsys, "wkb", "--curve=-y + x^2 + 2*x*y + y^2", "--orders", "2", "--degree", "8")
    assert code == 0
    u0 = [frac(r) for r in doc["result"]["u"][0]]
    assert u0[2:9] == ["1", "2", "5", "14", "42", "132", "429"]


def test_wkb_shift(capsys):
    code, doc = run_json(capsys, "wkb", "--curve=-y + x^2 + 2*x*y + y^2", "--orders", "1", "--degree", "5", "--shift", "1")
    assert code == 0
    assert [frac(r) for r in doc["result"]["u"][1]][:5] == ["0", "2", "10", "44", "186"]


def test_lambda(capsys):
    code, doc = run_json(capsys, "lambda", "--hpower", "9")
    assert code == 0
    assert frac(doc["result"]["kappa"]) == "1/4"
    assert frac(doc["result"]["lambda"][9]) == "-1/12960"


def test_reduce_numeric_and_symbolic(capsys):
    code, doc = run_json(capsys, "reduce", "--preset", "ks4d", "--params", "a=1,b=1,c=1,d=1,A=0,B=0,D=0")
    assert code == 0 and doc["result"]["verdict"] == "AGREE"
    assert frac(doc["result"]["z2_coefficient"]) == "1"
    code, doc = run_json(capsys, "reduce", "--preset", "ks4d")
    assert code == 0 and doc["result"]["verdict"] == "AGREE"
    assert "expression" in doc["result"]["c1"]


def test_reduce_degenerate_is_failure(capsys):
    # a = cA + B^2 c d / (b - dD) with c=d=b=B=1, A=D=0 gives a = 1
    code, doc = run_json(capsys, "reduce", "--preset", "ks4d", "--params", "a=1,b=1,c=1,d=1,A=0,B=1,D=0")
    assert code == 1
    assert doc["status"] == "fail"
    assert "transversally" in doc["checks"][0]["detail"]


def test_reduce_custom_subspaces(capsys):
    code = run(["reduce", "--xs", "x1,x2", "--ys", "y1,y2", "--G", "2*x1 + y1 - 3*y2", "--L", "y1 - x1", "--L", "y2 + 2*x2"])
    assert code == 0
    assert "verdict: AGREE" in capsys.readouterr().out


def test_check_suites(capsys):
    code, doc = run_json(capsys, "check", "--suite", "ring", "--suite", "wick", "--scale", "0.2")
    assert code == 0
    assert [s["name"] for s in doc["result"]["suites"]] == ["ring-axioms", "wick-oracle"]


@pytest.mark.parametrize("name", ["conic", "ks4d"])
def test_presets_pass(capsys, name):
    code, doc = run_json(capsys, "preset", name)
    assert code == 0 and doc["status"] == "pass"
    assert all(c["passed"] for c in doc["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["star", "2x", "y"],
        ["star", "x", "z"],
        ["star", "--pi", "0,1;-1,0", "x", "y"],
        ["wkb", "--curve", "x^2 + 1"],
        ["reduce", "--preset", "ks4d", "--params", "a=1,q=2"],
        ["check", "--suite", "nope"],
        ["frobnicate"],
        ["wkb"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    capsys.readouterr()


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("DQUANT_HBAR_ORDER", "1")
    code, doc = run_json(capsys, "star", "x^2", "y^2")
    assert code == 0 and doc["result"]["product"]["order"] == 1
    monkeypatch.setenv("DQUANT_DEGREE", "4")
    code, doc = run_json(capsys, "wkb", "--curve=-y + x^2 + 2*x*y + y^2", "--orders", "0")
    assert len(doc["result"]["u"][0]) == 5
    monkeypatch.setenv("DQUANT_DEGREE", "many")
    assert run(["wkb", "--curve=-y + x^2", "--orders", "0"]) == 2
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dquant", "star", "x", "y"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "hbar^1: -1/2" in proc.stdout
