from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET

import pytest

from idealtda.cli import main


@pytest.fixture
def three_csv(tmp_path, three_point_dist):
    path = tmp_path / "three.csv"
    path.write_text(
        "\n".join(",".join(repr(x) for x in row) for row in three_point_dist) + "\n"
    )
    return path


@pytest.fixture
def worked_json(tmp_path):
    data = {
        "n": 4,
        "faces": [[1, 2, 3], [1, 4]],
        "atoms": ["x1", "x2", "x3", "x4"],
        "labels": [[1, 0, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]],
    }
    path = tmp_path / "worked.json"
    path.write_text(json.dumps(data))
    return path


def test_barcodes_three_points(three_csv, tmp_path):
    out = tmp_path / "out"
    assert main(["barcodes", "--input", str(three_csv), "--out", str(out), "--svg"]) == 0
    payload = json.loads((out / "barcodes.json").read_text())
    kinds = [g["kind"] for g in payload["barcodes"]]
    assert kinds == ["SR", "EDGE", "PH"]
    sr = payload["barcodes"][0]["intervals"]
    deaths = {tuple(iv["prime"]): iv["death"] for iv in sr}
    assert deaths[(2,)] == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert deaths[(3,)] == pytest.approx(math.sqrt(2.0), abs=1e-12)
    report = json.loads((out / "report.json").read_text())
    assert report["coverage"]["ok"] is True
    root = ET.parse(out / "barcodes.svg").getroot()
    total = sum(len(g["intervals"]) for g in payload["barcodes"])
    assert len([e for e in root.iter() if e.tag.endswith("rect")]) == total


def test_barcodes_deterministic(three_csv, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["barcodes", "--input", str(three_csv), "--out", str(a)]) == 0
    assert main(["barcodes", "--input", str(three_csv), "--out", str(b)]) == 0
    assert (a / "barcodes.json").read_bytes() == (b / "barcodes.json").read_bytes()


def test_barcodes_points_and_complex_formats(tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"points": [[0, 0], [2, 0], [0, 2]]}))
    out1 = tmp_path / "o1"
    assert main(["barcodes", "--input", str(pts), "--format", "points-json", "--out", str(out1)]) == 0
    payload = json.loads((out1 / "barcodes.json").read_text())
    sr = payload["barcodes"][0]["intervals"]
    assert any(iv["death"] == pytest.approx(math.sqrt(2.0)) for iv in sr if iv["death"] != "inf")

    cx = tmp_path / "cx.json"
    cx.write_text(json.dumps({"n": 3, "faces": [[1, 2], [3]]}))
    out2 = tmp_path / "o2"
    assert main(["barcodes", "--input", str(cx), "--format", "complex-json", "--out", str(out2)]) == 0
    payload = json.loads((out2 / "barcodes.json").read_text())
    assert all(iv["death"] == "inf" for g in payload["barcodes"] for iv in g["intervals"])


def test_barcodes_input_errors(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert main(["barcodes", "--input", str(empty), "--out", str(tmp_path / "x")]) == 2
    assert "empty" in capsys.readouterr().err

    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n1,zz\n")
    assert main(["barcodes", "--input", str(bad), "--out", str(tmp_path / "y")]) == 2
    assert ":2:2" in capsys.readouterr().err

    assert main(["barcodes", "--input", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "z")]) == 2

    asym = tmp_path / "asym.csv"
    asym.write_text("0,1\n2,0\n")
    assert main(["barcodes", "--input", str(asym), "--out", str(tmp_path / "w")]) == 2
    assert "symmetric" in capsys.readouterr().err


def test_usage_error_exit_code(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["barcodes", "--input", "x", "--format", "nope", "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_labelled_report_with_alpha(worked_json, tmp_path):
    out = tmp_path / "rep"
    assert main(
        ["labelled", "--input", str(worked_json), "--alpha", "0,1,1,1", "--out", str(out)]
    ) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["diag_relation"] is True
    assert report["chain_condition"] is True
    assert report["ranks"]["equal"] is True
    d1 = report["boundary_matrices"]["1"]
    assert d1["entries"] == [
        ["x2*x3", "x2*x4", "0", "x3*x4"],
        ["-x1", "0", "x4", "0"],
        ["0", "-x1", "-x3", "0"],
        ["0", "0", "0", "-x1"],
    ]
    assert report["slice"]["iso"] is True
    assert report["slice"]["matrices"]["1"] == [["1"], ["-1"], ["0"]]
    assert report["slice"]["matrices"]["0"] == [["-1", "-1", "-1"]]


def test_labelled_report_inadmissible_point(tmp_path):
    data = {
        "n": 3,
        "faces": [[1, 2, 3]],
        "atoms": ["x1", "x2", "x1+x2"],
        "atom_polys": {"x1+x2": [[1, [1, 0]], [1, [0, 1]]]},
        "labels": [[0, 0, 1], [1, 0, 0], [1, 1, 0]],
    }
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(data))
    out = tmp_path / "rep"
    assert main(
        ["labelled", "--input", str(path), "--point", "x1=1,x2=-1", "--out", str(out)]
    ) == 0
    report = json.loads((out / "report.json").read_text())
    ev = report["evaluation"]
    assert ev["admissible"] is False
    assert ev["vanishing"] == [[1, "(x1+x2)"]]
    assert ev["window"] == [2, 3]
    assert ev["window_equal"] is True


def test_labelled_admissible_point_report(tmp_path, worked_json):
    out = tmp_path / "rep2"
    assert main(
        ["labelled", "--input", str(worked_json), "--point", "x1=1,x2=2,x3=1/2,x4=-3", "--out", str(out)]
    ) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["evaluation"]["admissible"] is True
    assert report["evaluation"]["equal"] is True


def test_labelled_unit_labels_all_trivial(tmp_path):
    data = {
        "n": 3,
        "faces": [[1, 2], [2, 3]],
        "atoms": ["x1"],
        "labels": [[0], [0], [0]],
    }
    path = tmp_path / "unit.json"
    path.write_text(json.dumps(data))
    out = tmp_path / "rep"
    assert main(["labelled", "--input", str(path), "--point", "x1=5", "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["labels"] == ["1", "1", "1"]
    assert report["boundary_matrices"]["1"]["entries"] == [
        ["1", "0"],
        ["-1", "1"],
        ["0", "-1"],
    ]
    assert report["diag_relation"] is True
    assert report["ranks"]["equal"] is True
    assert report["evaluation"]["equal"] is True


def test_labelled_bad_flags(worked_json, tmp_path, capsys):
    assert main(["labelled", "--input", str(worked_json), "--alpha", "1,a", "--out", str(tmp_path / "o")]) == 2
    assert main(["labelled", "--input", str(worked_json), "--point", "x1", "--out", str(tmp_path / "o")]) == 2
    capsys.readouterr()


def test_verify_quick_and_fault_injection(tmp_path, capsys):
    out = tmp_path / "v"
    assert main(["verify", "--trials", "4", "--seed", "3", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert printed.count("PASS") == 9
    report = json.loads((out / "report.json").read_text())
    assert all(s["failures"] == 0 for s in report["suites"])

    assert main(["verify", "--trials", "4", "--seed", "3", "--inject-fault"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_degenerate_single_vertex(capsys):
    assert main(["verify", "--trials", "3", "--seed", "0", "--max-n", "1"]) == 0
    assert "FAIL" not in capsys.readouterr().out
