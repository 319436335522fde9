from fractions import Fraction

import pytest

from app.core.errors import DimensionMismatchError
from app.core.hankel import HankelConvention
from app.core.poly import parse
from app.services import reports
from app.utils.helpers import format_terms, parse_rational, to_jsonable


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(4) == 4
    for bad in ("0.5", "1e3", "x", "1/0"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_terms():
    assert format_terms([(Fraction(-1, 2), "x1 x2"), (Fraction(1), "x2^2")]) == "-1/2 x1 x2 + x2^2"
    assert format_terms([]) == "0"
    assert format_terms([(Fraction(-3), "")]) == "-3"


def test_to_jsonable():
    value = {"a": Fraction(1, 3), "b": (1, Fraction(2)), "c": parse("x1^2", 1), "d": HankelConvention.PLAIN, "e": True}
    assert to_jsonable(value) == {"a": "1/3", "b": [1, "2"], "c": "x1^2", "d": "plain", "e": True}


def test_certify_report_summary():
    report = reports.certify_report("x1^4 - 3 x1^2 x2^2 + x2^4", 2, budget=0)
    assert report.verdict == "NOT_NONNEGATIVE"
    assert report.dimensions.N == 5
    assert "total" in report.timings
    summary = reports.render_summary(report)
    assert "verdict: NOT_NONNEGATIVE" in summary
    assert "WITNESS_POINT" in summary


def test_certify_report_with_reference():
    report = reports.certify_report("x1^2 + x2^2", 2, references=["x1^2 + 2 x2^2"])
    assert report.verdict == "POSITIVE"


def test_charpoly_report_fields():
    result = reports.charpoly_report("x1^2 - x2^2", 2).result
    assert result["chi"] == "t^2 - 1"
    assert result["coefficients"] == ["-1", "0", "1"]
    assert result["discriminant"] == "-1"
    assert result["nonneg_on_ray"] is False


def test_roots_report_with_root_at_zero():
    result = reports.roots_report("t^3 - t").result
    assert result["root_at_zero_multiplicity"] == 1
    assert result["sylvester_nonzero_real_roots"] == 2
    assert result["sturm_real_roots"] == 3
    assert result["sturm_positive_roots"] == 1
    assert result["ray_witness"] is not None


def test_restrict_report_needs_one_target():
    with pytest.raises(DimensionMismatchError):
        reports.restrict_report("x1^2", 2)
    with pytest.raises(DimensionMismatchError):
        reports.restrict_report("x1^2", 2, subset=[1], basis=[[1, 0]])
    with pytest.raises(DimensionMismatchError):
        reports.restrict_report("x1^2", 2, basis=[["1/2", "0.5"]])
