"""
Testes do documento de relatório e dos escritores JSON/CSV.
"""

import io
import json
from fractions import Fraction

import pandas as pd

from src.reports import (
    STATUS_FAIL,
    STATUS_INFO,
    STATUS_PASS,
    coefficients_csv,
    coefficients_frame,
    make_check,
    new_report,
    to_json,
    write_report,
)


def test_make_check_statuses():
    assert make_check("s", "a", True).status == STATUS_PASS
    assert make_check("s", "a", False).status == STATUS_FAIL
    assert make_check("s", "a", False, info=True).status == STATUS_INFO


def test_exact_values_rendered_as_fractions():
    check = make_check("s", "leading", True, n=2, family="Xi", exact=Fraction(-1, 16))
    assert check.exact_value == "-1/16"
    assert make_check("s", "sum", True, exact=4).exact_value == "4/1"
    assert "numeric_value" not in check.to_dict()


def test_report_document_layout():
    doc = new_report(with_timestamp=False, suite="structural")
    doc.add_suite("structural", [make_check("structural", "a", True), make_check("structural", "b", False)])
    doc.add_suite("roots", [make_check("roots", "c", True, info=True)])
    data = doc.to_dict()
    assert "timestamp" not in data["meta"]
    assert data["meta"]["summary"] == {"pass": 1, "fail": 1, "info": 1}
    assert [s["name"] for s in data["suites"]] == ["structural", "roots"]
    assert doc.has_failures


def test_timestamp_present_by_default():
    assert new_report().timestamp is not None


def test_json_is_deterministic():
    def render():
        doc = new_report(with_timestamp=False, n_max=2)
        doc.add_suite("x", [make_check("x", "y", True, n=1, exact=Fraction(1, 3))])
        return to_json(doc.to_dict())

    assert render() == render()
    assert json.loads(render())["suites"][0]["checks"][0]["exact_value"] == "1/3"


def test_write_report_to_stream_and_file(tmp_path):
    doc = new_report(with_timestamp=False)
    stream = io.StringIO()
    write_report(doc, stream=stream)
    assert json.loads(stream.getvalue())["meta"]["tool_version"]

    path = tmp_path / "nested" / "report.json"
    write_report(doc, path)
    assert path.read_text(encoding="utf-8") == stream.getvalue()


def test_coefficients_frame_and_csv():
    frame = coefficients_frame([Fraction(5, 96), Fraction(-1, 16)])
    assert list(frame.columns) == ["t", "numerator", "denominator"]
    assert frame.iloc[1]["numerator"] == "-1"
    assert coefficients_csv([Fraction(1, 7)]) == "t,numerator,denominator\n0,1,7\n"


def test_coefficients_keep_big_integers():
    big = Fraction(3**100, 7)
    frame = coefficients_frame([big])
    assert isinstance(frame, pd.DataFrame)
    assert frame.iloc[0]["numerator"] == str(3**100)
