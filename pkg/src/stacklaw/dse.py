"""Design-space exploration: evaluate, sweep, Pareto-filter and compare stacks.

A design point's performance is an additive-penalty CPI model::

    CPI = base_cpi + refs_per_instr * miss_ratio * miss_penalty

with the miss ratio taken from the last on-stack cache level and the miss
penalty from the off-stack bus (leading edge + M/D/1 wait + trailing edge).
Throughput is threads / CPI at a fixed clock.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .bus_bandwidth import (QUEUE_MODEL, TrafficModel, miss_penalty, offered_load,
                            queuing_delay, utilization)
from .cache_locality import miss_rate, trailing_edge
from .design import (CORES, METRICS, Constraints, DesignPoint, EvaluationResult,
                     SweepSpec)
from .errors import ConfigError, DomainError, SweepTooLarge
from .scaling_laws import ScalingQuery, capacity_factor, wire_performance_factor
from .stack_geometry import (GrowthMode, TSV_FRACTION_LIMIT, cube_check,
                             growth_advice, power_tsv_count, usable_area)
from .thermal_stack import (LayerThermal, ThermalStack, hotspot_overlap_index,
                            layer_temperatures)


class SweepRow(NamedTuple):
    index: int
    parameters: dict
    point: DesignPoint
    result: EvaluationResult


def evaluate(point: DesignPoint, constraints: Constraints = Constraints()) -> EvaluationResult:
    """Evaluate one design point. Pure and deterministic.

    A saturated bus is reported through ``bus_saturated`` with the
    performance fields set to None rather than raised.
    """
    ll = point.last_level
    miss = miss_rate(ll.capacity, point.locality)
    lam = offered_load(TrafficModel(point.threads, point.accesses_per_cycle_per_thread, miss))
    te = trailing_edge(ll.line_size, point.bus)
    state = utilization(lam, te)

    if state.saturated:
        wait = penalty = cpi = throughput = None
    else:
        wait = queuing_delay(state.utilization, te)
        penalty = miss_penalty(point.bus, ll.line_size, wait)
        base = point.base_cpi
        if point.apply_wire_factor:
            base = base / wire_performance_factor(point.geometry.n)
        cpi = base + point.refs_per_instr * miss * penalty
        throughput = point.threads / cpi

    stack = point.thermal
    temps = layer_temperatures(stack)
    layer_max = tuple(float(v) for v in temps.max(axis=(1, 2)))
    max_temp = max(layer_max)
    total_power = stack.total_power
    hotspot = hotspot_overlap_index(stack) if total_power > 0 else None

    geom = point.geometry
    count = power_tsv_count(total_power, point.supply_voltage, point.tsv)
    tsv_frac = count * point.tsv.cell_area / (geom.layer_area * 1.0e6)
    tsv_bad = tsv_frac > TSV_FRACTION_LIMIT
    taken = min(1.0, max(geom.tsv_fraction, tsv_frac))
    area = usable_area(replace(geom, tsv_fraction=taken))

    return EvaluationResult(
        cpi=cpi,
        throughput=throughput,
        miss_ratio=miss,
        rho=state.utilization,
        wait=wait,
        miss_penalty=penalty,
        trailing_edge=te,
        layer_max_temps=layer_max,
        max_temperature=max_temp,
        hotspot_index=hotspot,
        usable_area=area,
        footprint=geom.layer_area,
        cache_capacity=sum(c.capacity for c in point.caches),
        total_power=total_power,
        tsv_fraction=tsv_frac,
        tsv_count=count,
        bus_saturated=state.saturated,
        thermal_infeasible=constraints.t_max is not None and max_temp > constraints.t_max,
        cube_violated=not cube_check(geom),
        tsv_infeasible=tsv_bad,
        rho_exceeded=state.utilization >= constraints.rho_max,
        area_exceeded=constraints.area_max is not None and geom.layer_area > constraints.area_max,
        queue_model=QUEUE_MODEL,
    )


def resize_stack(stack: ThermalStack, n: int) -> ThermalStack:
    """Truncate to ``n`` layers, or pad by repeating the top layer."""
    layers = stack.layers[:n] + (stack.layers[-1],) * max(0, n - len(stack.layers))
    return replace(stack, layers=layers)


def apply_overrides(point: DesignPoint, overrides: dict) -> DesignPoint:
    """Return ``point`` with sweep parameters substituted.

    Changing ``layers`` resizes the thermal stack with :func:`resize_stack`
    and moves components assigned above the new top layer onto it.
    """
    o = overrides
    ll = point.last_level
    ll = replace(ll, **{k: o[k] for k in ("capacity", "line_size", "associativity") if k in o})
    bus = replace(point.bus, **{f: o[k] for k, f in (("bus_width", "width"),
                                                     ("cycles_per_bus_clock", "cycles_per_bus_clock"),
                                                     ("leading_edge", "leading_edge")) if k in o})
    locality = replace(point.locality, alpha=o["alpha"]) if "alpha" in o else point.locality
    geom = point.geometry
    thermal = point.thermal
    assignment = point.layer_assignment
    if "edge" in o:
        geom = replace(geom, x=o["edge"])
    if "layers" in o:
        n = o["layers"]
        geom = replace(geom, n=n)
        thermal = resize_stack(thermal, n)
        assignment = {k: min(v, n - 1) for k, v in assignment.items()}
    return replace(
        point,
        threads=o.get("threads", point.threads),
        caches=point.caches[:-1] + (ll,),
        bus=bus,
        locality=locality,
        geometry=geom,
        thermal=thermal,
        layer_assignment=assignment,
    )


def enumerate_points(spec: SweepSpec) -> list:
    """All (parameters, point) pairs in lexicographic order, last parameter fastest."""
    if spec.size > spec.max_points:
        raise SweepTooLarge(spec.size, spec.max_points)
    names = spec.parameters
    out = []
    for combo in itertools.product(*spec.values.values()):
        params = dict(zip(names, combo))
        try:
            out.append((params, apply_overrides(spec.base, params)))
        except DomainError as exc:
            raise ConfigError(f"invalid combination {params}: {exc}", path="sweep") from exc
    return out


def sweep(spec: SweepSpec, jobs: int = 1, chunksize: Optional[int] = None) -> list:
    """Evaluate the full cross product of ``spec``.

    Output order is the enumeration order whatever the number of workers.
    """
    pairs = enumerate_points(spec)
    points = [p for _, p in pairs]
    fn = partial(evaluate, constraints=spec.constraints)
    if jobs <= 1 or len(points) < 2:
        results = [fn(p) for p in points]
    else:
        if chunksize is None:
            chunksize = max(1, len(points) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, points, chunksize=chunksize))
    return [SweepRow(i, params, point, res)
            for i, ((params, point), res) in enumerate(zip(pairs, results))]


def parse_objectives(objectives) -> list:
    """Normalize objectives to ``[(metric, "min"|"max"), ...]``.

    Accepts pairs or strings like ``"throughput:max,max_temperature:min"``.
    """
    if isinstance(objectives, str):
        objectives = [s for s in objectives.split(",") if s.strip()]
    out = []
    for obj in objectives:
        if isinstance(obj, str):
            metric, _, direction = obj.strip().partition(":")
            direction = direction or "min"
        else:
            metric, direction = obj
        metric, direction = metric.strip(), direction.strip().lower()
        if metric not in METRICS:
            raise ConfigError(f"unknown metric {metric!r}; choose from {', '.join(METRICS)}",
                              path="objectives")
        if direction not in ("min", "max"):
            raise ConfigError(f"direction must be 'min' or 'max', got {direction!r}",
                              path="objectives")
        out.append((metric, direction))
    if not out:
        raise ConfigError("at least one objective is required", path="objectives")
    return out


def _result_of(item) -> EvaluationResult:
    return item.result if isinstance(item, SweepRow) else item


def pareto(items: Sequence, objectives, block: int = 512) -> list:
    """Non-dominated subset of feasible ``items``, in input order.

    ``items`` are SweepRow or EvaluationResult objects. A point is dropped
    when another is at least as good in every objective and strictly better
    in one; exact ties survive together.
    """
    objs = parse_objectives(objectives)
    keep = []
    for item in items:
        res = _result_of(item)
        if res.feasible and all(res.metric(m) is not None for m, _ in objs):
            keep.append(item)
    if not keep:
        return []
    # minimize everything
    sign = np.array([1.0 if d == "min" else -1.0 for _, d in objs])
    vals = np.array([[_result_of(it).metric(m) for m, _ in objs] for it in keep], dtype=float)
    vals = vals * sign
    dominated = np.zeros(len(keep), dtype=bool)
    for start in range(0, len(keep), block):
        cand = vals[start:start + block]
        le = (vals[:, None, :] <= cand[None, :, :]).all(axis=2)
        lt = (vals[:, None, :] < cand[None, :, :]).any(axis=2)
        dominated[start:start + block] = (le & lt).any(axis=0)
    return [it for it, d in zip(keep, dominated) if not d]


@dataclass(frozen=True)
class CompositionComparison:
    homogeneous: EvaluationResult
    functional: EvaluationResult
    deltas: dict


def homogeneous_stack(stack: ThermalStack) -> ThermalStack:
    """Refold a functional stack into ``n`` identical full-system layers.

    The grid is cut into ``n`` horizontal bands. Band ``b`` of functional
    layer ``l`` becomes band ``l`` of homogeneous layer ``b``, so each layer
    holds one replica of every component and equal components line up
    vertically. Total power and per-component power are preserved.
    """
    n = len(stack.layers)
    rows, cols = stack.grid_dims
    if rows % n:
        raise ConfigError(f"grid rows ({rows}) must be divisible by the layer count ({n})",
                          path="thermal.layers")
    p = stack.power_array().reshape(n, n, rows // n, cols)
    folded = p.swapaxes(0, 1).reshape(n, rows, cols)
    layers = tuple(LayerThermal(folded[i], layer.r_above) for i, layer in enumerate(stack.layers))
    return replace(stack, layers=layers)


def compare_compositions(point: DesignPoint,
                         constraints: Constraints = Constraints()) -> CompositionComparison:
    """Functional layering (the point as given) versus homogeneous replication.

    The point's own stack is the functional composition: cores on one layer,
    cache on others. The homogeneous composition stacks full-system replicas
    built from the same components by :func:`homogeneous_stack`.
    """
    n = point.geometry.n
    if n < 2:
        raise ConfigError("comparing compositions needs at least 2 layers", path="geometry.n")
    assignment = point.layer_assignment
    cache_layers = {v for k, v in assignment.items() if k != CORES}
    if CORES not in assignment or not cache_layers:
        raise ConfigError("layer_assignment must place both cores and cache levels",
                          path="layer_assignment")
    if cache_layers == {assignment[CORES]}:
        raise ConfigError("functional composition needs cache on a layer other than the cores",
                          path="layer_assignment")

    functional = evaluate(point, constraints)
    homog_point = replace(point, thermal=homogeneous_stack(point.thermal))
    homogeneous = evaluate(homog_point, constraints)

    def diff(a, b):
        return None if a is None or b is None else a - b

    deltas = {
        "max_temperature": homogeneous.max_temperature - functional.max_temperature,
        "layer_max_temps": tuple(h - f for h, f in zip(homogeneous.layer_max_temps,
                                                        functional.layer_max_temps)),
        "hotspot_index": diff(homogeneous.hotspot_index, functional.hotspot_index),
    }
    return CompositionComparison(homogeneous=homogeneous, functional=functional, deltas=deltas)


class Question(enum.Enum):
    GROWTH_DIRECTION = "GrowthDirection"
    CAPACITY_FOR_THREAD_DOUBLING = "CapacityForThreadDoubling"
    BANDWIDTH_HEADROOM = "BandwidthHeadroom"


@dataclass(frozen=True)
class Advice:
    question: Question
    value: object
    summary: str


def advise(point: DesignPoint, question, *, delta: Optional[float] = None,
           constraints: Constraints = Constraints(),
           mode: GrowthMode = GrowthMode.EXACT) -> Advice:
    try:
        q = Question(question)
    except ValueError:
        names = ", ".join(m.value for m in Question)
        raise ConfigError(f"unknown question {question!r}; choose from {names}",
                          path="question") from None

    if q is Question.GROWTH_DIRECTION:
        if delta is None or not delta > 0:
            raise ConfigError("GrowthDirection needs a positive delta (mm)", path="delta")
        g = point.geometry
        advice = growth_advice(g.x, g.n, delta, mode)
        return Advice(q, advice, f"x={g.x} mm, n={g.n}, delta={delta} mm: {advice.value}")

    if q is Question.CAPACITY_FOR_THREAD_DOUBLING:
        alpha = point.locality.alpha
        factor = capacity_factor(ScalingQuery(2.0, 1.0, alpha))
        return Advice(q, factor, f"doubling threads at fixed bandwidth needs {factor:g}x "
                                 f"total cache (alpha={alpha:g})")

    rho = evaluate(point, constraints).rho
    headroom = math.inf if rho == 0 else constraints.rho_max / rho
    return Advice(q, headroom, f"rho={rho:g}, rho_max={constraints.rho_max:g}: "
                               f"threads can grow {headroom:g}x")
