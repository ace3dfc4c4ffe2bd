import csv
import json

import numpy as np
import pytest

from hardyops.cli import main
from hardyops.report import AnalysisRequest, ReportDocument, analyze


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_hyponormal_example(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "analyze", "--psi", "2*exp(z)/(2-z)", "--phi", "z/(2-z)", "--out", str(out))
    assert code == 0
    doc = ReportDocument.from_json(out.read_text())
    assert doc.spectral["spectral_radius_theory"] == pytest.approx(np.sqrt(2) * np.e, rel=1e-12)
    assert doc.classification["normaloid"] == "yes"
    assert doc.denjoy_wolff["location"] == "interior"
    sp = doc.spectral
    assert sp["spectral_radius_matrix"] <= sp["numerical_radius"] + 1e-9
    assert sp["numerical_radius"] <= sp["norm_estimate"] + 1e-9


def test_analyze_identity_weight_stdout(capsys):
    code, out, _ = run(capsys, "analyze", "--psi", "1", "--phi", "z/2", "--trunc", "16,32,64")
    assert code == 0
    doc = json.loads(out)
    assert doc["classification"]["normaloid"] == "yes"
    assert doc["spectral"]["norm_bounds"] == [1.0, 1.0]


def test_analyze_not_self_map(capsys):
    code, _, err = run(capsys, "analyze", "--psi", "1", "--phi", "2*z")
    assert code == 1
    assert json.loads(err)["error"] == "NotSelfMap"


def test_analyze_bad_expression(capsys):
    code, _, err = run(capsys, "analyze", "--psi", "exp(", "--phi", "z/2")
    assert code == 1
    assert "error" in json.loads(err)


def test_analyze_blocked_hypothesis(capsys):
    # boundary attracting point with multiplier 1: UCI is not certified and not asserted
    code, out, _ = run(capsys, "analyze", "--psi", "1/(2-z)", "--phi", "1/(2-z)", "--trunc", "16,32")
    assert code == 2
    assert json.loads(out)["spectral"]["spectral_radius_theory"] is None


def test_bad_arguments_exit_through_argparse(capsys):
    with pytest.raises(SystemExit):
        main(["analyze", "--psi", "1", "--phi", "z/2", "--assert", "bogus"])


def test_request_validation():
    with pytest.raises(ValueError):
        AnalysisRequest("1", "z/2", trunc_ladder=[64, 32])
    with pytest.raises(ValueError):
        AnalysisRequest("1", "z/2", angles=8)


def test_report_round_trip():
    doc = analyze(AnalysisRequest("exp(z)", "z/2", trunc_ladder=[16, 32]))
    again = ReportDocument.from_json(doc.to_json())
    assert again == doc
    assert isinstance(again.spectral["numerical_range_boundary"][0], complex)
    with pytest.raises(ValueError):
        ReportDocument.from_json(json.dumps({"schema": 99}))


def test_range_shift_block(tmp_path, capsys):
    out = tmp_path / "r.csv"
    svg = tmp_path / "r.svg"
    code, _, _ = run(capsys, "range", "--matrix", "[[0,1],[0,0]]", "--out", str(out), "--svg", str(svg))
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["theta", "re", "im"]
    pts = np.array([complex(float(r[1]), float(r[2])) for r in rows[1:]])
    assert len(pts) == 64
    assert np.allclose(np.abs(pts), 0.5, atol=1e-8)
    text = svg.read_text()
    assert text.startswith("<svg") and "<polygon" in text


def test_range_hermitian_is_collinear(capsys):
    code, out, _ = run(capsys, "range", "--psi", "1/(2-z)", "--phi", "1/(2-z)", "--trunc", "32")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    assert max(abs(float(r[2])) for r in rows) <= 1e-10


def test_range_complex_matrix_entries(capsys):
    code, out, _ = run(capsys, "range", "--matrix", '[["1j", 0], [0, "-1j"]]', "--angles", "16")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    assert max(abs(float(r[1])) for r in rows) <= 1e-12
