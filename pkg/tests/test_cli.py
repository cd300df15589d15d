import json

import pytest

from jacsyz import __version__
from jacsyz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_free(capsys):
    code, out, _ = run(capsys, "analyze", "x*(x*y−z^2)")
    doc = json.loads(out)
    assert code == 0
    assert doc["classification"] == "free" and doc["exponents"] == [1, 1]
    assert doc["version"] == __version__
    assert doc["complete"] is True
    assert list(doc)[:4] == ["input", "degree", "exponents", "classification"]


def test_analyze_nearly_free(capsys):
    _, out, _ = run(capsys, "analyze", "x*(x+y)*(x*y-z^2)")
    doc = json.loads(out)
    assert doc["classification"] == "nearly_free"
    assert doc["exponents"] == [2, 2, 2] and doc["level"] == 2
    assert doc["hilbert"]["N"] == [0, 0, 0, 1, 0, 0, 0]


@pytest.mark.parametrize(
    "argv, code",
    [
        (("analyze", "x^2*y"), 4),
        (("analyze", "x^2*y + z"), 3),
        (("analyze", "x*+y"), 2),
        (("analyze", "x*y"), 2),
        (("add-line", "x*(x*y-z^2)", "x"), 5),
        (("delete-line", "x*(x*y-z^2)", "y"), 5),
        (("scan", "nope"), 6),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("jacsyz:")


def test_not_homogeneous_message_names_term(capsys):
    _, _, err = run(capsys, "analyze", "x^2*y + 5*z")
    assert "5*z" in err


def test_add_line(capsys):
    _, out, _ = run(capsys, "add-line", "x*z*(x*y-z^2)", "x-z")
    doc = json.loads(out)
    assert (doc["case"], doc["r"], doc["epsilon"]) == (2, 2, 1)
    assert doc["identities"]["failed"] == []


def test_add_line_case_three(capsys):
    _, out, _ = run(capsys, "add-line", "(x^3+y^3)*(x^3+y^3+z^3)", "x+2*y-z")
    doc = json.loads(out)
    assert doc["case"] == 3 and doc["union"]["exponents"] == [3, 4, 5]


def test_delete_line(capsys):
    _, out, _ = run(capsys, "delete-line", "x*z*(x-z)*(x*y-z^2)", "x")
    doc = json.loads(out)
    assert doc["case"] == 3 and doc["curve"]["exponents"] == [2, 2, 2] and doc["r"] == 1
    _, out, _ = run(capsys, "delete-line", "x*y*(x*y-z^2)", "y")
    assert json.loads(out)["curve"]["exponents"] == [1, 1]


def test_add_line_falls_back_when_not_free(capsys):
    code, out, err = run(capsys, "add-line", "x*(x+y)*(x*y-z^2)", "z")
    doc = json.loads(out)
    assert code == 0
    assert "notice" in doc and "notice" in err
    assert doc["exponents"] == [2, 3, 3]


def test_scan_cm_csv(capsys):
    _, out, _ = run(capsys, "scan", "cm", "3..6", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "id,params,degree,exponents,classification,tau,nu,sigma,r,epsilon,pass"
    assert len(lines) == 5
    assert all(line.endswith(",true") for line in lines[1:])


def test_scan_cusp(capsys):
    _, out, _ = run(capsys, "scan", "cusp", "2..4")
    rows = json.loads(out)["rows"]
    assert [r["exponents"] for r in rows] == [[2, 2], [3, 3], [4, 4]]
    assert all(r["pass"] for r in rows)


def test_table_format(capsys):
    _, out, _ = run(capsys, "analyze", "x*y*z", "--format", "table")
    assert out.splitlines()[0].split() == ["degree", "3"]


def test_determinism(capsys):
    _, a, _ = run(capsys, "conjectures", "--random", "5", "--exploratory", "2", "--no-corpus", "--seed", "4")
    _, b, _ = run(capsys, "conjectures", "--random", "5", "--exploratory", "2", "--no-corpus", "--seed", "4")
    assert a == b
    doc = json.loads(a)
    assert doc["irreducible"]["checked"] == 5
    assert doc["irreducible"]["conj2_violations"] == 0


def test_manifest(capsys):
    _, out, _ = run(capsys, "manifest")
    doc = json.loads(out)
    assert len(doc["gallery"]) == 13
    assert any(p["direction"] == "deletion" for p in doc["pairs"])


def test_timing_flag(capsys):
    _, _, err = run(capsys, "analyze", "x*y*z", "--timing")
    assert err.startswith("elapsed_ms ")
