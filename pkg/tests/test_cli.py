import json
import random
import subprocess
import sys

import pytest

from conversekit.cli import run


def report(argv, capsys):
    code = run(argv + ["--json", "-"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_verify_tables_18(capsys):
    code, rep = report(["verify", "tables", "--level", "18"], capsys)
    ids = [c["id"] for c in rep["checks"]]
    assert sum(".word-match." in i for i in ids) == 8
    assert "N18.generates.first-table" in ids
    # row 5 of the original N=18 list is not unimodular, so the suite fails
    assert code == 1 and rep["overall"] == "fail"


def test_verify_tables_20_passes(capsys):
    code, rep = report(["verify", "tables", "--level", "20"], capsys)
    assert code == 0 and rep["overall"] == "pass"
    assert rep["schema"] == 1 and rep["invocation"][:2] == ["verify", "tables"]


def test_classify_word(capsys):
    code, rep = report(["classify", "--word", "D^-1 P3/5"], capsys)
    assert code == 0
    assert "elliptic-infinite, normalized trace -2/5" in rep["checks"][0]["details"]


def test_subgroup_index(capsys):
    code, rep = report(["subgroup", "index", "--level", "24"], capsys)
    assert code == 0 and rep["checks"][0]["numeric"]["value"] == 48


def test_check_generates_file(tmp_path, capsys):
    f = tmp_path / "gens.txt"
    f.write_text("# Gamma0(4)\n1,1;0,1\n1,0;4,1\n-1,0;0,-1\n")
    code, rep = report(["subgroup", "check-generates", "--level", "4", "--file", str(f)], capsys)
    assert code == 0 and "index 6" in rep["checks"][0]["details"]
    f.write_text("1,1;0,1\n-1,0;0,-1\n")
    code, _ = report(["subgroup", "check-generates", "--level", "2", "--file", str(f)], capsys)
    assert code == 1


def test_chars(capsys):
    assert report(["chars", "gauss", "--modulus", "12"], capsys)[0] == 0
    assert report(["chars", "twist-identity", "--modulus", "7", "--max-n", "50"], capsys)[0] == 0


def test_special_prime(capsys):
    code, rep = report(["special-prime", "--level", "5", "--bound", "1000"], capsys)
    assert code == 1 and "conflicts with" in rep["checks"][0]["details"]
    code, rep = report(["special-prime", "--level", "5", "--bound", "1000", "--adapt"], capsys)
    assert code == 0 and "q = 11" in rep["checks"][0]["details"]


def test_decompose_and_find_word(capsys):
    code, rep = report(["decompose", "--level", "18", "--matrix", "7,-1;36,-5", "--no-zero-shift"], capsys)
    assert code == 0 and "q = 43, s = 31" in rep["checks"][0]["details"]
    code, rep = report(["find-word", "--target", "1,0;4,1", "--alphabet", "P-1 H4", "--max-len", "4"], capsys)
    assert code == 0 and "length 3" in rep["checks"][0]["details"]


def test_verify_certificates(tmp_path, capsys):
    code, rep = report(["verify", "certificates"], capsys)
    assert code == 0 and len(rep["checks"]) == 12
    bad = tmp_path / "c.json"
    bad.write_text('{"claim": [[{"terms": [{"monomial": {}, "re": "1", "im": "0"}]}, "1,0;0,1"]], "witness": []}')
    code, rep = report(["verify", "certificates", "--file", str(bad)], capsys)
    assert code == 1 and "first mismatch" in rep["checks"][0]["details"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["classify", "--matrix", "1,2;3"],
        ["classify", "--matrix", "1,1;0,1", "--nope"],
        ["verify", "tables", "--level", "12"],
        ["chars", "twist-identity", "--modulus", "9"],
        ["decompose", "--level", "5", "--matrix", "0,-1;1,0"],
        ["verify", "certificates", "--file", "/nonexistent.json"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_json_output_is_deterministic(tmp_path):
    p = tmp_path / "r.json"
    outputs = []
    for _ in range(2):
        run(["verify", "tables", "--level", "24", "--json", str(p)])
        outputs.append(p.read_bytes())
    assert outputs[0] == outputs[1]


def test_exit_code_agrees_with_overall(capsys):
    rng = random.Random(7)
    choices = [
        lambda: ["subgroup", "index", "--level", str(rng.randint(1, 40))],
        lambda: ["classify", "--matrix", rng.choice(["0,-1;1,0", "2,1;1,1", "6,-4;33,-16", "1,1;0,2"])],
        lambda: ["chars", "gauss", "--modulus", str(rng.randint(1, 30))],
        lambda: ["decompose", "--level", str(rng.choice([11, 18])), "--matrix", rng.choice(["7,-1;36,-5", "1,0;18,1", "1,3;0,1"])],
        lambda: ["find-word", "--target", "1,0;4,1", "--alphabet", rng.choice(["P-1 H4", "P1"]), "--max-len", "3"],
        lambda: ["special-prime", "--level", str(rng.choice([1, 3, 4])), "--bound", "500"],
    ]
    for _ in range(50):
        argv = rng.choice(choices)()
        code = run(argv + ["--json", "-"])
        out = capsys.readouterr().out
        if code == 2:
            continue
        assert code == (0 if json.loads(out)["overall"] == "pass" else 1), argv


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "conversekit", "subgroup", "index", "--level", "18"], capture_output=True, text=True)
    assert res.returncode == 0 and "index 36" in res.stdout
