import json

import pytest

from toriczeta.cli import main
from toriczeta.zeta import ZetaReport

DWORK = "x1+x2+x1^-1*x2^-1+{}"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out.out)


def test_analyze_regular(capsys):
    code, data = run_json(capsys, "analyze", "--field", "7", "--poly", DWORK.format(3))
    assert code == 0
    assert data["P"] == ["1", "7", "343"]
    assert data["verdicts"]["np_above_hp"] is True and data["verdicts"]["endpoints_coincide"] is True


def test_analyze_singular_lambda_one(capsys):
    code, data = run_json(capsys, "analyze", "--field", "7", "--poly", DWORK.format(1))
    assert code == 5
    assert data["regularity"] == "NotRegular"


def test_analyze_refuses_when_p_divides_det(capsys):
    code, out = run(capsys, "analyze", "--field", "3", "--poly", DWORK.format(1))
    assert code == 6
    assert "closure counts" in out.out
    assert "np_above_hp: None" in out.out


def test_zero_polynomial(capsys):
    code, out = run(capsys, "analyze", "--field", "5", "--poly", "x1 - x1")
    assert code == 2
    assert "zero_polynomial" in out.err


def test_error_as_json(capsys):
    code, data = run_json(capsys, "geometry", "--field", "6", "--poly", "x1")
    assert code == 2 and data["error"] == "not_prime"


def test_zeta_report_roundtrip(capsys):
    code, data = run(capsys, "zeta", "--field", "7", "--poly", DWORK.format(3))
    assert code == 0
    report = ZetaReport.from_json(json.loads(data.out))
    assert report.reverify()


def test_cy_all(capsys):
    code, data = run_json(capsys, "cy", "--n", "2", "--field", "7", "--lambda", "all")
    assert code == 0
    assert len(data["rows"]) == 7
    assert all(r["congruent"] for r in data["rows"])
    assert all(r.get("trace_formula", True) for r in data["rows"])


def test_cy_fermat_f4(capsys):
    code, data = run_json(capsys, "cy", "--n", "2", "--field", "4", "--lambda", "0", "--check", "congruence")
    assert code == 0
    assert data["rows"][0]["X"] == "9"


def test_cy_budget(capsys):
    code, out = run(capsys, "cy", "--n", "5", "--field", "11")
    assert code == 3
    assert "budget" in out.err


def test_geometry_square(capsys):
    code, data = run_json(capsys, "geometry", "--poly", "x1 + x2 + x1^-1 + x2^-1")
    assert code == 0
    assert data["is_simplex"] is False


def test_hodge_and_regularity(capsys):
    code, data = run_json(capsys, "hodge", "--field", "7", "--poly", DWORK.format(3))
    assert code == 0 and data["h"] == ["0", "1", "1", "0"]
    code, data = run_json(capsys, "regularity", "--field", "7", "--poly", DWORK.format(4))
    assert code == 5 and data["status"] == "NotRegular"


def test_count_faces(capsys):
    code, data = run_json(capsys, "count", "--field", "7", "--ext", "2", "--faces", "--poly", DWORK.format(3))
    assert code == 0
    assert data["closure"] == {"1": "9", "2": "63"}
    assert len(data["faces"]) == 7


def test_flags_after_subcommand_and_before(capsys):
    a = run_json(capsys, "--field", "5", "count", "--poly", "1 + x1")
    b = run_json(capsys, "count", "--field", "5", "--poly", "1 + x1")
    assert a == b


def test_missing_poly():
    with pytest.raises(SystemExit):
        main(["hodge"])
