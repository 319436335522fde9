import io
import json

import jsonschema
import pytest

from app.cli import (
    EXIT_CAPACITY,
    EXIT_NOT_NONNEGATIVE,
    EXIT_OK,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    run,
)
from app.models.report import SCHEMA_PATH, CertificateEntry, CheckEntry, Dimensions, Report, load_schema


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_certify_positive():
    code, out, _ = call("certify", "-n", "2", "x1^4 + x2^4")
    assert code == EXIT_OK
    assert "verdict: POSITIVE" in out
    assert "CHI_POSITIVE_RAY" in out


def test_certify_exit_codes():
    code, out, _ = call("certify", "-n", "2", "x1^4 - 3 x1^2 x2^2 + x2^4")
    assert code == EXIT_NOT_NONNEGATIVE
    assert "witness: (1, 1)" in out
    code, _, _ = call("certify", "-n", "2", "x1^2 x2^2")
    assert code == EXIT_UNKNOWN


def test_certify_json_report():
    code, out, _ = call("certify", "-n", "2", "x1^2 - x2^2", "--json")
    assert code == EXIT_NOT_NONNEGATIVE
    report = Report.model_validate_json(out)
    assert report.verdict == "NOT_NONNEGATIVE"
    assert report.dimensions.D == 2
    assert report.certificates[0].kind == "SYLVESTER_MINORS"


def test_json_is_deterministic_without_timings():
    args = ("certify", "-n", "2", "x1^4 - x1^2 x2^2 + x2^4", "--json", "--seed", "3")
    first = Report.model_validate_json(call(*args)[1])
    second = Report.model_validate_json(call(*args)[1])
    assert first.deterministic_json() == second.deterministic_json()


def test_discriminant_prints_value():
    code, out, _ = call("discriminant", "-n", "2", "x1^4 + 2 x1^2 x2^2 + x2^4")
    assert code == EXIT_OK
    assert out.strip() == "0"
    code, out, _ = call("discriminant", "-n", "2", "x1^2 + 3 x1 x2 + 2 x2^2")
    assert out.strip() == "-1/4"


def test_charpoly_and_table(tmp_path):
    table = tmp_path / "chi.tsv"
    code, out, _ = call("charpoly", "-n", "2", "x1^2 + 2 x2^2", "--table", str(table), "--table-steps", "4")
    assert code == EXIT_OK
    assert out.strip() == "t^2 + 3 t + 2"
    lines = table.read_text().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "0\t2"
    assert lines[-1] == "4\t30"


def test_charpoly_subset():
    code, out, _ = call("charpoly", "-n", "2", "x1^4 + x2^4", "--subset", "1")
    assert code == EXIT_OK
    assert out.strip() == "t + 1"


def test_hankel_json():
    code, out, _ = call("hankel", "-n", "2", "x1^2 x2^2", "--json")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["matrix"] == [["0", "0", "1/6"], ["0", "1/6", "0"], ["1/6", "0", "0"]]
    assert result["definiteness"] == "INDEFINITE"
    assert result["mu_identity"] is True


def test_roots():
    code, out, _ = call("roots", "t^2 - 5 t + 6", "--json")
    assert code == EXIT_OK
    result = json.loads(out)["result"]
    assert result["sylvester_nonzero_real_roots"] == 2
    assert result["sylvester_positive_roots"] == 2
    assert result["sturm_positive_roots"] == 2
    assert result["nonneg_on_ray"] is False


def test_restrict():
    code, out, _ = call("restrict", "-n", "3", "x1^4 + x2^4 + x3^4", "--subset", "1,2")
    assert code == EXIT_OK
    assert out.strip() == "x1^4 + x2^4"
    code, out, _ = call("restrict", "-n", "2", "x1 x2", "--basis", "[[1, 1]]")
    assert out.strip() == "x1^2"


def test_file_input(tmp_path):
    source = tmp_path / "form.txt"
    source.write_text("x1^2 + x2^2\n")
    code, out, _ = call("discriminant", "-n", "2", "--file", str(source))
    assert code == EXIT_OK and out.strip() == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ("certify", "x1^2"),
        ("certify", "-n", "2"),
        ("certify", "-n", "2", "x1^3 + x2^3"),
        ("certify", "-n", "2", "x1 + x2^2"),
        ("restrict", "-n", "2", "x1^2", "--subset", "1", "--basis", "[[1, 0]]"),
        ("frobnicate",),
    ],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err


def test_capacity_exit_code():
    code, _, err = call("discriminant", "-n", "5", "x1^2 + x2^2 + x3^2 + x4^2 + x5^2")
    assert code == EXIT_CAPACITY
    assert "capacity" in err


def test_schema():
    code, out, _ = call("schema")
    assert code == EXIT_OK
    schema = json.loads(out)
    assert schema == load_schema() == json.loads(SCHEMA_PATH.read_text())
    assert "verdict" in schema["properties"]
    jsonschema.Draft202012Validator.check_schema(schema)


def test_schema_covers_every_report_field():
    schema = load_schema()
    assert set(schema["properties"]) == set(Report.model_fields)
    for name, definition in schema["$defs"].items():
        model = {"Dimensions": Dimensions, "CertificateEntry": CertificateEntry, "CheckEntry": CheckEntry}.get(name)
        if model is not None:
            assert set(definition["properties"]) == set(model.model_fields), name


@pytest.mark.parametrize(
    "argv",
    [
        ("certify", "-n", "2", "x1^4 + x2^4"),
        ("certify", "-n", "2", "x1^4 - 3 x1^2 x2^2 + x2^4"),
        ("certify", "-n", "2", "x1^2 x2^2"),
        ("certify", "-n", "2", "x1^2 - x2^2"),
        ("discriminant", "-n", "2", "x1^4 + x1^3 x2 - 2 x1 x2^3 + 5 x2^4"),
        ("charpoly", "-n", "2", "x1^4 - x1^2 x2^2 + 2 x2^4"),
        ("hankel", "-n", "2", "x1^2 x2^2"),
        ("roots", "t^2 - 5 t + 6"),
        ("restrict", "-n", "3", "x1^4 + x2^4 + x3^4", "--subset", "1,2"),
    ],
)
def test_json_reports_match_the_shipped_schema(argv):
    _, out, _ = call(*argv, "--json")
    document = json.loads(out)
    jsonschema.validate(instance=document, schema=load_schema())
    assert document["command"] == argv[0]


def test_schema_rejects_malformed_reports():
    _, out, _ = call("certify", "-n", "2", "x1^2 - x2^2", "--json")
    document = json.loads(out)
    for broken in (
        {**document, "verdict": "MAYBE"},
        {**document, "witness": ["0.5", "1"]},
        {**document, "extra": 1},
        {key: value for key, value in document.items() if key != "command"},
    ):
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(instance=broken, schema=load_schema())
