"""Design points, constraints, sweep specifications and evaluation results."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Optional

from .cache_locality import BusSpec, CacheLevelSpec, LocalityModel
from .errors import DomainError
from .stack_geometry import StackGeometry, TsvSpec
from .thermal_stack import ThermalStack

CORES = "cores"


def cache_component(index: int) -> str:
    """Component name of cache level ``index`` (0-based): L1, L2, ..."""
    return f"L{index + 1}"


def default_layer_assignment(levels: int, n: int) -> dict:
    """Cores and L1 on layer 0, each outer level one layer higher, capped at the top."""
    assignment = {CORES: 0}
    for i in range(levels):
        assignment[cache_component(i)] = min(i, n - 1)
    return assignment


@dataclass(frozen=True)
class Constraints:
    """Feasibility limits. ``None`` leaves a limit unchecked.

    t_max in deg C, rho_max dimensionless, area_max bounds the footprint x^2 in mm^2.
    """

    t_max: Optional[float] = None
    rho_max: float = 1.0
    area_max: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.rho_max <= 1:
            raise DomainError(f"rho_max must be in (0, 1], got {self.rho_max}")
        if self.area_max is not None and not self.area_max > 0:
            raise DomainError(f"area_max must be > 0, got {self.area_max}")


@dataclass(frozen=True)
class DesignPoint:
    """A complete candidate system.

    ``caches`` is ordered innermost first; the last entry is the last on-stack
    level whose misses go off-stack and whose capacity drives ``locality``.
    ``layer_assignment`` maps "cores" and "L1".."Lk" to layer indices.
    ``apply_wire_factor`` divides base CPI by sqrt(n), a crude proxy for the
    shorter wires of a taller stack.
    """

    threads: int
    accesses_per_cycle_per_thread: float
    caches: tuple
    locality: LocalityModel
    bus: BusSpec
    geometry: StackGeometry
    tsv: TsvSpec
    thermal: ThermalStack
    base_cpi: float
    refs_per_instr: float
    supply_voltage: float = 1.0
    layer_assignment: dict = field(default=None)
    apply_wire_factor: bool = False

    def __post_init__(self):
        object.__setattr__(self, "caches", tuple(self.caches))
        if not isinstance(self.threads, int) or self.threads < 1:
            raise DomainError(f"threads must be an integer >= 1, got {self.threads}")
        if not self.accesses_per_cycle_per_thread > 0:
            raise DomainError("accesses_per_cycle_per_thread must be > 0")
        if not self.caches:
            raise DomainError("at least one cache level is required")
        if not all(isinstance(c, CacheLevelSpec) for c in self.caches):
            raise DomainError("caches must be CacheLevelSpec instances")
        if not self.base_cpi > 0:
            raise DomainError(f"base_cpi must be > 0, got {self.base_cpi}")
        if not self.refs_per_instr >= 0:
            raise DomainError(f"refs_per_instr must be >= 0, got {self.refs_per_instr}")
        if not self.supply_voltage > 0:
            raise DomainError(f"supply_voltage must be > 0, got {self.supply_voltage}")
        if len(self.thermal.layers) != self.geometry.n:
            raise DomainError(
                f"thermal stack has {len(self.thermal.layers)} layers but geometry.n is {self.geometry.n}"
            )
        if self.layer_assignment is None:
            assignment = default_layer_assignment(len(self.caches), self.geometry.n)
        else:
            assignment = dict(self.layer_assignment)
        known = {CORES} | {cache_component(i) for i in range(len(self.caches))}
        for name, layer in assignment.items():
            if name not in known:
                raise DomainError(f"layer_assignment names unknown component {name!r}")
            if not isinstance(layer, int) or not 0 <= layer < self.geometry.n:
                raise DomainError(
                    f"layer_assignment[{name!r}] = {layer} is not a layer index < n = {self.geometry.n}"
                )
        object.__setattr__(self, "layer_assignment", assignment)

    @property
    def last_level(self) -> CacheLevelSpec:
        return self.caches[-1]


@dataclass(frozen=True)
class EvaluationResult:
    """Evaluated metrics of one design point.

    ``cpi``, ``throughput``, ``wait`` and ``miss_penalty`` are None when the
    bus is saturated; a saturated bus has no steady-state performance.
    """

    cpi: Optional[float]
    throughput: Optional[float]
    miss_ratio: float
    rho: float
    wait: Optional[float]
    miss_penalty: Optional[float]
    trailing_edge: float
    layer_max_temps: tuple
    max_temperature: float
    hotspot_index: Optional[float]
    usable_area: float
    footprint: float
    cache_capacity: int
    total_power: float
    tsv_fraction: float
    tsv_count: int
    bus_saturated: bool
    thermal_infeasible: bool
    cube_violated: bool
    tsv_infeasible: bool
    rho_exceeded: bool
    area_exceeded: bool
    queue_model: str

    FLAGS = ("bus_saturated", "thermal_infeasible", "cube_violated",
             "tsv_infeasible", "rho_exceeded", "area_exceeded")

    @property
    def feasible(self) -> bool:
        return not any(getattr(self, f) for f in self.FLAGS)

    def metric(self, name: str):
        return getattr(self, name)


METRICS = tuple(
    f.name for f in fields(EvaluationResult)
    if f.name not in EvaluationResult.FLAGS
    and f.name not in ("layer_max_temps", "queue_model")
)

# Canonical sweep parameter order; the last one varies fastest.
SWEEP_PARAMETERS = (
    "threads",
    "capacity",
    "line_size",
    "associativity",
    "alpha",
    "bus_width",
    "cycles_per_bus_clock",
    "leading_edge",
    "layers",
    "edge",
)

DEFAULT_MAX_POINTS = 100_000


@dataclass(frozen=True)
class SweepSpec:
    """Cross product of parameter values around a base point.

    ``values`` maps names from SWEEP_PARAMETERS to non-empty value tuples.
    """

    base: DesignPoint
    values: dict = field(default_factory=dict)
    constraints: Constraints = field(default_factory=Constraints)
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        vals = {}
        for name, seq in dict(self.values).items():
            if name not in SWEEP_PARAMETERS:
                raise DomainError(f"unknown sweep parameter {name!r}")
            seq = tuple(seq)
            if not seq:
                raise DomainError(f"sweep parameter {name!r} has an empty value list")
            vals[name] = seq
        object.__setattr__(self, "values", {k: vals[k] for k in SWEEP_PARAMETERS if k in vals})
        if self.max_points < 1:
            raise DomainError("max_points must be >= 1")

    @property
    def parameters(self) -> tuple:
        return tuple(self.values)

    @property
    def size(self) -> int:
        return math.prod(len(v) for v in self.values.values())
