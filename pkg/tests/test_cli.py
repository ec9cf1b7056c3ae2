import json
import os
import re
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from fracseq import InfMatrix, Seq, TriangleMatrix, coeff_table, make_family
from fracseq.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("FRACSEQ_REGEN_GOLDEN") == "1"

GOLDEN_CASES = {
    "coeffs_half.json": ["coeffs", "--alpha", "1/2", "--n", "6"],
    "coeffs_half.csv": ["coeffs", "--alpha", "1/2", "--n", "6", "--format", "csv"],
    "coeffs_minus_half.csv": ["coeffs", "--alpha=-1/2", "--n", "6", "--format", "csv"],
    "coeffs_zero.txt": ["coeffs", "--alpha", "0", "--n", "3", "--format", "table"],
    "transform_unit0.json": ["transform", "--x", "unit:0", "--alpha", "1/2", "--n", "8"],
    "norm_geometric.json": ["norm", "--x", "geometric:1/2", "--alpha", "1/3", "--n", "8"],
    "basis_j2.csv": ["basis", "--alpha", "1/2", "--u", "2", "--n", "5", "--j", "2", "--format", "csv"],
    "betadual_linear.json": ["betadual", "--a", "arithmetic:0,1", "--alpha", "0", "--n", "32"],
    "classify_cesaro.csv": [
        "classify", "--family", "cesaro-c1", "--direction", "into", "--source", "c", "--target", "c",
        "--alpha", "1", "--n", "32", "--format", "csv",
    ],
}


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def no_floats(text):
    def reject(token):
        raise AssertionError(f"float literal {token} in rational output")

    return json.loads(text, parse_float=reject)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_outputs(capsys, name):
    code, out, _ = run(capsys, GOLDEN_CASES[name])
    path = GOLDEN / name
    if REGEN:
        path.write_text(out)
    assert out == path.read_text()
    assert code in (0, 1, 2)


def test_coeffs_values_match_tables(capsys):
    code, out, _ = run(capsys, ["coeffs", "--alpha", "1/2", "--n", "6"])
    data = no_floats(out)
    assert code == 0
    assert [Fraction(e) for e in data["entries"]] == list(coeff_table("1/2", 6).entries)
    assert data["entries"][-1] == "-7/256"
    _, out, _ = run(capsys, ["coeffs", "--alpha", "0", "--n", "3", "--format", "csv"])
    assert out.splitlines()[1:] == ["0,1", "1,0", "2,0"]


def test_malformed_order_is_an_error(capsys):
    code, _, err = run(capsys, ["coeffs", "--alpha", "1/x"])
    assert code == 1 and "malformed" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["coeffs"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_transform_of_unit(capsys):
    _, out, _ = run(capsys, ["transform", "--x", "unit:0", "--alpha", "1/2", "--n", "8"])
    y = Seq.from_json(no_floats(out))
    assert y.entries[:3] == (1, Fraction(1, 2), Fraction(3, 8))
    assert y.entries == coeff_table("-1/2", 8).entries


def test_invert_roundtrip_pipeline(capsys, tmp_path):
    x = make_family("random", [-2, 2, 17], 24)
    src = tmp_path / "x.json"
    src.write_text(x.dumps())
    common = ["--alpha", "2/5", "--u=-1/2,2,1,1,-1,2,1/2,1,1,1,2,-2,1,1,1,1,1,1,1,2,1,1,1,1"]
    code, out, _ = run(capsys, ["transform", "--x", f"@{src}"] + common)
    assert code == 0
    ypath = tmp_path / "y.json"
    ypath.write_text(out)
    code, out, _ = run(capsys, ["invert", "--x", f"@{ypath}"] + common)
    assert code == 0
    assert Seq.from_json(no_floats(out)) == x
    assert json.loads(out) == x.to_json()


def test_inline_and_stdin_sources(capsys, monkeypatch):
    import io

    _, out, _ = run(capsys, ["transform", "--x", "1,-1/2,3/4", "--alpha", "1"])
    assert json.loads(out)["entries"] == ["1", "-1/2", "3/4"]
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"mode": "rational", "entries": ["1", "2"]})))
    _, out, _ = run(capsys, ["transform", "--x", "@-", "--alpha", "0"])
    assert json.loads(out)["entries"] == ["1", "3"]


def test_bad_sources(capsys, tmp_path):
    code, _, err = run(capsys, ["transform", "--x", "1,zz", "--alpha", "1"])
    assert code == 1 and "cannot parse" in err
    code, _, err = run(capsys, ["transform", "--x", f"@{tmp_path / 'missing.json'}", "--alpha", "1"])
    assert code == 1 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, ["transform", "--x", f"@{bad}", "--alpha", "1"])
    assert code == 1 and "not valid JSON" in err
    code, _, err = run(capsys, ["transform", "--x", "1,2", "--u", "1,0", "--alpha", "1"])
    assert code == 1 and "zero" in err


def test_member_exit_codes(capsys):
    code, out, _ = run(capsys, ["member", "--x", "constant:1", "--alpha", "0", "--space", "c0"])
    assert code == 1 and "witness" in json.loads(out)["evidence"]
    code, _, _ = run(capsys, ["member", "--x", "unit:0", "--alpha", "1/2", "--n", "512", "--tol", "0.05"])
    assert code == 0
    code, _, _ = run(capsys, ["member", "--x", "unit:0", "--alpha", "1/2", "--n", "16", "--tol", "0.05"])
    assert code == 2
    code, _, err = run(capsys, ["member", "--x", "unit:0", "--alpha", "1/2", "--n", "10"])
    assert code == 1 and "window" in err


def test_betadual_examples(capsys):
    assert run(capsys, ["betadual", "--a", "unit:0", "--alpha", "1/2", "--n", "32"])[0] == 0
    assert run(capsys, ["betadual", "--a", "constant:1", "--alpha", "0", "--n", "32"])[0] == 0
    code, out, _ = run(capsys, ["betadual", "--a", "arithmetic:0,1", "--alpha", "0", "--n", "32"])
    data = no_floats(out)
    assert code == 1
    bad = [c for c in data["conditions"] if c["verdict"] == "violated"]
    assert bad and bad[0]["evidence"]["witness"]["row"] == 31


def test_classify_examples(capsys):
    base = ["--direction", "into", "--source", "c", "--target", "c", "--n", "32"]
    code, out, _ = run(capsys, ["classify", "--family", "cesaro-c1", "--alpha", "1"] + base)
    assert code == 0 and json.loads(out)["item"] == "cor2.vi"
    # at order zero the c-domain consists of convergent series; the mean of a constant is not one
    assert run(capsys, ["classify", "--family", "cesaro-c1", "--alpha", "0"] + base)[0] == 1
    code, _, _ = run(capsys, ["classify", "--family", "zero", "--alpha", "1/2", "--direction", "from",
                              "--source", "c", "--target", "l1", "--n", "32"])
    assert code == 0
    code, out, _ = run(capsys, ["classify", "--family", "identity", "--alpha", "1/2", "--direction", "from",
                                "--source", "c0", "--target", "linf", "--n", "32", "--crosscheck", "10"])
    data = no_floats(out)
    assert code == 0
    assert [c["condition"] for c in data["conditions"]] == ["31", "28"]
    assert data["crosscheck"]["consistent"] and data["crosscheck"]["samples"] == 10


def test_classify_inline_and_file_matrix(capsys, tmp_path):
    path = tmp_path / "a.json"
    path.write_text(InfMatrix.from_family("identity", 16).dumps())
    args = ["--direction", "into", "--item", "cor2.iii", "--alpha", "1", "--window", "4"]
    assert run(capsys, ["classify", "--matrix", f"@{path}"] + args)[0] == 0
    rows = ";".join(",".join("1" if k == n else "0" for k in range(8)) for n in range(8))
    assert run(capsys, ["classify", "--matrix", rows] + args)[0] == 0
    code, _, err = run(capsys, ["classify", "--family", "zero", "--matrix", rows] + args)
    assert code == 1 and "either" in err
    code, _, err = run(capsys, ["classify", "--family", "zero", "--alpha", "0", "--direction", "from"])
    assert code == 1


def test_cap_limit(capsys):
    code, _, err = run(capsys, ["classify", "--family", "zero", "--alpha", "0", "--direction", "from",
                                "--source", "c0", "--target", "l1", "--cap", "21"])
    assert code == 1 and "cap" in err


def test_basis_outputs(capsys):
    _, out, _ = run(capsys, ["basis", "--alpha", "1/2", "--n", "6"])
    m = TriangleMatrix.from_json(no_floats(out))
    assert m.n == 6
    _, out, _ = run(capsys, ["basis", "--alpha", "1/2", "--n", "6", "--limit"])
    assert json.loads(out)["element"] == "limit"


def test_rational_outputs_have_no_floats(capsys):
    for argv in GOLDEN_CASES.values():
        if "--format" not in argv:
            _, out, _ = run(capsys, argv)
            no_floats(out)
            assert not re.search(r"\d\.\d|e-\d", out)


def test_float_mode(capsys):
    _, out, _ = run(capsys, ["transform", "--x", "unit:0", "--alpha", "0.5", "--n", "4", "--mode", "float"])
    data = json.loads(out)
    assert data["mode"] == "float" and data["entries"] == [1.0, 0.5, 0.375, 0.3125]


def test_table_format(capsys):
    _, out, _ = run(capsys, ["classify", "--family", "identity", "--alpha", "0", "--direction", "into",
                             "--source", "linf", "--target", "c0", "--n", "32", "--format", "table"])
    assert out.splitlines()[0].startswith("linf -> c0(G,D^a,u)  [cor2.i]  violated")


def test_selfcheck_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "fracseq", "selfcheck", "--format", "csv"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("check,result")
    assert all(",pass," in line for line in lines[1:])


def test_module_entry_point_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "fracseq", "member", "--x", "constant:1", "--alpha", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
