"""Load and save JSON design configurations.

Structure and types are checked against ``config.schema.json``; physical
invariants are then checked by the domain constructors. Every problem is
reported with its field path, and nothing is returned unless the whole
document is valid.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema

from .cache_locality import BusSpec, CacheLevelSpec, LocalityModel
from .design import DEFAULT_MAX_POINTS, Constraints, DesignPoint, SweepSpec
from .dse import apply_overrides
from .errors import ConfigError, ConfigParseError, DomainError, InvariantViolation, SchemaViolation
from .stack_geometry import StackGeometry, TsvSpec
from .thermal_stack import LayerThermal, ThermalStack

CONFIG_VERSION = 1


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("config.schema.json").read_text())


_VALIDATOR = None


def _validator():
    global _VALIDATOR
    if _VALIDATOR is None:
        schema = load_schema()
        _VALIDATOR = jsonschema.Draft202012Validator(schema)
    return _VALIDATOR


def format_path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


class _Problems:
    def __init__(self):
        self.items = []

    def add(self, path, reason):
        self.items.append((path, reason))

    def build(self, section, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DomainError, ConfigError) as exc:
            self.add(section, getattr(exc, "reason", None) or str(exc))
            return None


def _raise(cls, problems):
    path, reason = problems[0]
    raise cls(reason, path=path, problems=problems)


def parse_document(doc: dict):
    """Validate a parsed JSON document and build ``(DesignPoint, SweepSpec)``."""
    errors = sorted(_validator().iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        _raise(SchemaViolation, [(format_path(e.absolute_path), e.message) for e in errors])

    probs = _Problems()
    w = doc["workload"]
    locality = probs.build("workload", LocalityModel, w["c0"], w["m0"], w.get("alpha", 0.5))
    caches = [
        probs.build(f"cache[{i}]", CacheLevelSpec, int(c["capacity"]), int(c["line_size"]),
                    int(c.get("associativity", 1)))
        for i, c in enumerate(doc["cache"])
    ]
    b = doc["bus"]
    bus = probs.build("bus", BusSpec, int(b["width"]), int(b.get("cycles_per_bus_clock", 1)),
                      b.get("leading_edge", 0.0))
    g = doc["geometry"]
    geom = probs.build("geometry", StackGeometry, g["x"], int(g["n"]),
                       g["t"], g.get("tsv_fraction", 0.0))
    t = doc["tsv"]
    tsv = probs.build("tsv", TsvSpec, t["diameter"], t["pitch"], t["current_limit"], t["cell_area"])
    supply = t.get("supply_voltage", 1.0)
    if not supply > 0:
        probs.add("tsv.supply_voltage", f"must be > 0, got {supply}")

    th = doc["thermal"]
    layers = []
    for i, layer in enumerate(th["layers"]):
        rows = layer["power_map"]
        if len({len(r) for r in rows}) != 1:
            probs.add(f"thermal.layers[{i}].power_map", "rows have different lengths")
            layers.append(None)
            continue
        layers.append(probs.build(f"thermal.layers[{i}]", LayerThermal, rows, layer["r_above"]))
    stack = None
    if all(layers):
        stack = probs.build("thermal", ThermalStack, layers, th["r_sink"], th["ambient"])
    if geom is not None and len(th["layers"]) != geom.n:
        probs.add("thermal.layers", f"has {len(th['layers'])} layers but geometry.n is {geom.n}")

    c = doc.get("constraints", {})
    constraints = probs.build("constraints", Constraints, c.get("t_max"), c.get("rho_max", 1.0),
                              c.get("area_max"))

    assignment = doc.get("layer_assignment")
    if probs.items:
        _raise(InvariantViolation, probs.items)

    point = probs.build(
        "layer_assignment" if assignment is not None else "config",
        DesignPoint,
        threads=int(doc["threads"]),
        accesses_per_cycle_per_thread=w["accesses_per_cycle_per_thread"],
        caches=tuple(caches),
        locality=locality,
        bus=bus,
        geometry=geom,
        tsv=tsv,
        thermal=stack,
        base_cpi=w["base_cpi"],
        refs_per_instr=w["refs_per_instr"],
        supply_voltage=supply,
        layer_assignment=assignment,
        apply_wire_factor=w.get("apply_wire_factor", False),
    )
    if point is None:
        _raise(InvariantViolation, probs.items)

    sw = dict(doc.get("sweep", {}))
    max_points = sw.pop("max_points", DEFAULT_MAX_POINTS)
    for name, values in sw.items():
        for j, v in enumerate(values):
            probs.build(f"sweep.{name}[{j}]", apply_overrides, point, {name: v})
    spec = probs.build("sweep", SweepSpec, point, sw, constraints, max_points)
    if probs.items:
        _raise(InvariantViolation, probs.items)
    return point, spec


def load_config(path):
    """Read a config file into ``(DesignPoint, SweepSpec)``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read config: {exc.strerror or exc}", path=str(path)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                               path=str(path)) from exc
    if not isinstance(doc, dict):
        raise SchemaViolation("top level must be a JSON object", path="<root>")
    return parse_document(doc)


def to_document(point: DesignPoint, spec: SweepSpec = None) -> dict:
    """Inverse of :func:`parse_document`."""
    doc = {
        "version": CONFIG_VERSION,
        "workload": {
            "c0": point.locality.c0,
            "m0": point.locality.m0,
            "alpha": point.locality.alpha,
            "refs_per_instr": point.refs_per_instr,
            "accesses_per_cycle_per_thread": point.accesses_per_cycle_per_thread,
            "base_cpi": point.base_cpi,
            "apply_wire_factor": point.apply_wire_factor,
        },
        "threads": point.threads,
        "cache": [{"capacity": c.capacity, "line_size": c.line_size,
                   "associativity": c.associativity} for c in point.caches],
        "bus": {"width": point.bus.width, "cycles_per_bus_clock": point.bus.cycles_per_bus_clock,
                "leading_edge": point.bus.leading_edge},
        "geometry": {"x": point.geometry.x, "n": point.geometry.n, "t": point.geometry.t,
                     "tsv_fraction": point.geometry.tsv_fraction},
        "tsv": {"diameter": point.tsv.diameter, "pitch": point.tsv.pitch,
                "current_limit": point.tsv.current_limit, "cell_area": point.tsv.cell_area,
                "supply_voltage": point.supply_voltage},
        "thermal": {
            "ambient": point.thermal.t_ambient,
            "r_sink": point.thermal.r_sink,
            "layers": [{"r_above": layer.r_above, "power_map": [list(r) for r in layer.power_map]}
                       for layer in point.thermal.layers],
        },
        "layer_assignment": dict(point.layer_assignment),
    }
    if spec is not None:
        sweep = {k: list(v) for k, v in spec.values.items()}
        if spec.max_points != DEFAULT_MAX_POINTS:
            sweep["max_points"] = spec.max_points
        if sweep:
            doc["sweep"] = sweep
        cons = {"rho_max": spec.constraints.rho_max}
        if spec.constraints.t_max is not None:
            cons["t_max"] = spec.constraints.t_max
        if spec.constraints.area_max is not None:
            cons["area_max"] = spec.constraints.area_max
        doc["constraints"] = cons
    return doc


def dump_config(point: DesignPoint, spec: SweepSpec = None, path=None) -> str:
    text = json.dumps(to_document(point, spec), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text

