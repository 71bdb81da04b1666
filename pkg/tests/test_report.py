import csv
import io
import json

import pytest

from stacklaw import SweepSpec, evaluate, sweep
from stacklaw.report import (ReportError, ReportFormat, emit_report, format_number, render,
                             to_record)

from conftest import make_point


@pytest.fixture
def rows():
    p = make_point()
    return sweep(SweepSpec(p, {"threads": [1, 4, 256], "capacity": [1 << 20, 1 << 23]}))


def _parse_cell(text, like):
    if like is None:
        return None if text == "" else text
    if isinstance(like, bool):
        return text == "true"
    if isinstance(like, list):
        return [_parse_cell(t, like[0] if like else 0.0) for t in text.split(";")] if text else []
    if isinstance(like, (int, float)):
        return float(text)
    return text


def test_empty_json():
    assert render([], ReportFormat.JSON).strip() == "[]"


def test_empty_csv_rejected():
    with pytest.raises(ReportError):
        render([], ReportFormat.CSV)


def test_one_result_two_csv_lines():
    text = render([evaluate(make_point())], "csv")
    assert len(text.splitlines()) == 2


def test_csv_matches_json(rows):
    records = json.loads(render(rows, "json"))
    parsed = list(csv.DictReader(io.StringIO(render(rows, "csv"))))
    assert len(parsed) == len(records)
    saw_none = False
    for rec, row in zip(records, parsed):
        assert list(rec) == list(row)
        for key, value in rec.items():
            got = _parse_cell(row[key], value)
            saw_none |= value is None
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                assert got == float(value)
            else:
                assert got == value
    assert saw_none  # the 256-thread rows saturate


def test_emission_deterministic(rows):
    for fmt in ReportFormat:
        assert render(rows, fmt) == render(list(rows), fmt)


def test_shortest_round_trip_numbers():
    for v in (0.1, 1 / 3, 1e-300, 123456.789, 2.0 ** 60):
        assert float(format_number(v)) == v
    assert format_number(8.0) == "8"
    assert format_number(True) == "true"


def test_csv_quoting():
    text = render([{"name": 'a,"b"', "v": 1}], "csv")
    assert text.splitlines()[1] == '"a,""b""",1'


def test_table_flags_as_symbols(rows):
    text = render(rows, "table")
    assert "flags" in text.splitlines()[0]
    saturated = [line for line in text.splitlines() if line.rstrip().endswith("SR")]
    assert saturated
    widths = {len(line) for line in text.splitlines()[:-1]}
    assert len(widths) == 1


def test_emit_to_file(tmp_path, rows):
    out = tmp_path / "r.csv"
    n = emit_report(rows, "csv", out)
    assert n == len(out.read_bytes())


def test_emit_unwritable(tmp_path, rows):
    with pytest.raises(ReportError):
        emit_report(rows, "csv", tmp_path / "missing" / "r.csv")


def test_stream_destination(rows):
    buf = io.StringIO()
    n = emit_report(rows, "json", buf)
    assert n == len(buf.getvalue().encode())


def test_record_layout(rows):
    rec = to_record(rows[0])
    assert list(rec)[:3] == ["index", "threads", "capacity"]
    assert rec["bus_saturated"] is False and rec["feasible"] is True
