"""Emit results as an aligned table, CSV or JSON.

Column order is fixed by the record layout. Numbers use the shortest decimal
that round-trips (integral floats drop the ``.0``), so identical results give
byte-identical output.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import sys
from collections.abc import Mapping
from pathlib import Path

from .design import SWEEP_PARAMETERS, DesignPoint, EvaluationResult
from .dse import SweepRow
from .errors import StacklawError

RESULT_COLUMNS = (
    "cpi", "throughput", "miss_ratio", "rho", "wait", "miss_penalty", "trailing_edge",
    "max_temperature", "layer_max_temps", "hotspot_index", "usable_area", "footprint",
    "cache_capacity", "total_power", "tsv_fraction", "tsv_count", "queue_model",
) + EvaluationResult.FLAGS + ("feasible",)

FLAG_SYMBOLS = {
    "bus_saturated": "S",
    "thermal_infeasible": "T",
    "cube_violated": "C",
    "tsv_infeasible": "V",
    "rho_exceeded": "R",
    "area_exceeded": "A",
}


class ReportFormat(enum.Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


class ReportError(StacklawError):
    pass


def point_parameters(point: DesignPoint) -> dict:
    ll = point.last_level
    return {
        "threads": point.threads,
        "capacity": ll.capacity,
        "line_size": ll.line_size,
        "associativity": ll.associativity,
        "alpha": point.locality.alpha,
        "bus_width": point.bus.width,
        "cycles_per_bus_clock": point.bus.cycles_per_bus_clock,
        "leading_edge": point.bus.leading_edge,
        "layers": point.geometry.n,
        "edge": point.geometry.x,
    }


def result_record(result: EvaluationResult) -> dict:
    rec = {name: getattr(result, name) for name in RESULT_COLUMNS if name != "feasible"}
    rec["feasible"] = result.feasible
    return rec


def to_record(item) -> dict:
    if isinstance(item, SweepRow):
        params = point_parameters(item.point)
        rec = {"index": item.index}
        rec.update((k, params[k]) for k in SWEEP_PARAMETERS)
        rec.update(result_record(item.result))
        return rec
    if isinstance(item, EvaluationResult):
        return result_record(item)
    if isinstance(item, Mapping):
        return dict(item)
    raise TypeError(f"cannot report {type(item).__name__}")


def format_number(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isfinite(value) and value.is_integer() and abs(value) < 1e16:
            return str(int(value))
        return repr(value)
    return str(value)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, (tuple, list)):
        return ";".join(format_cell(v) for v in value)
    return format_number(value)


def _json_value(value):
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return format_number(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    return value


def _columns(records) -> list:
    cols = list(records[0])
    for rec in records[1:]:
        if list(rec) != cols:
            raise ReportError("records do not share one column layout")
    return cols


def render_csv(records) -> str:
    if not records:
        raise ReportError("CSV output needs at least one result")
    cols = _columns(records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in records:
        writer.writerow([format_cell(rec[c]) for c in cols])
    return buf.getvalue()


def render_json(records) -> str:
    data = [{k: _json_value(v) for k, v in rec.items()} for rec in records]
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def render_table(records) -> str:
    if not records:
        raise ReportError("table output needs at least one result")
    cols = [c for c in _columns(records) if c not in FLAG_SYMBOLS]
    has_flags = any(c in FLAG_SYMBOLS for c in records[0])
    rows = []
    for rec in records:
        row = [_table_cell(rec[c]) for c in cols]
        if has_flags:
            row.append("".join(s for f, s in FLAG_SYMBOLS.items() if rec.get(f)) or "-")
        rows.append(row)
    header = cols + (["flags"] if has_flags else [])
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    if has_flags:
        lines.append("flags: " + " ".join(f"{s}={f}" for f, s in FLAG_SYMBOLS.items()))
    return "\n".join(lines) + "\n"


def _table_cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float) and math.isfinite(value) and not value.is_integer():
        return f"{value:.6g}"
    if isinstance(value, (tuple, list)):
        return ",".join(_table_cell(v) for v in value)
    return format_cell(value) or "n/a"


def render(results, fmt=ReportFormat.TABLE) -> str:
    records = [to_record(r) for r in results]
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.CSV:
        return render_csv(records)
    if fmt is ReportFormat.JSON:
        return render_json(records)
    return render_table(records)


def emit_report(results, fmt=ReportFormat.TABLE, destination=None) -> int:
    """Write ``results`` to ``destination`` (path, text stream, or stdout).

    Returns the number of bytes written.
    """
    text = render(results, fmt)
    data = text.encode("utf-8")
    if destination is None:
        destination = sys.stdout
    if isinstance(destination, (str, Path)):
        try:
            Path(destination).write_bytes(data)
        except OSError as exc:
            raise ReportError(f"cannot write {destination}: {exc.strerror or exc}") from exc
    else:
        destination.write(text)
        destination.flush()
    return len(data)
