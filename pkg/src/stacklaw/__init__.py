"""stacklaw: closed-form models of 3D-stacked chip systems and a design-space explorer."""

__version__ = "0.1.0"

from .bus_bandwidth import (BusState, TrafficModel, miss_penalty, offered_load,
                            queuing_delay, utilization)
from .cache_locality import (BusSpec, CacheLevelSpec, DirectoryStats, LocalityModel,
                             directory_stats, dislocation_factor, miss_rate, trailing_edge)
from .design import Constraints, DesignPoint, EvaluationResult, SweepSpec
from .dse import (Advice, CompositionComparison, Question, SweepRow, advise,
                  compare_compositions, evaluate, pareto, sweep)
from .errors import (ConfigError, DomainError, GeometryError, SaturationError, StacklawError,
                     UndefinedIndexError)
from .scaling_laws import (ScalingQuery, capacity_factor, capacity_for_bandwidth,
                           memory_wall_gap, wire_length_ratio, wire_performance_factor)
from .stack_geometry import (GrowthAdvice, GrowthMode, StackGeometry, TsvBudget, TsvSpec,
                             cube_check, growth_advice, interconnect_density, tsv_area_budget,
                             usable_area)
from .thermal_stack import (LayerThermal, ThermalCheck, ThermalStack, hotspot_overlap_index,
                            layer_temperatures, stacked_power_density, thermal_feasible)

__all__ = [
    "Advice",
    "advise",
    "BusSpec",
    "BusState",
    "CacheLevelSpec",
    "capacity_factor",
    "capacity_for_bandwidth",
    "compare_compositions",
    "CompositionComparison",
    "ConfigError",
    "Constraints",
    "cube_check",
    "DesignPoint",
    "directory_stats",
    "DirectoryStats",
    "dislocation_factor",
    "DomainError",
    "evaluate",
    "EvaluationResult",
    "GeometryError",
    "growth_advice",
    "GrowthAdvice",
    "GrowthMode",
    "hotspot_overlap_index",
    "interconnect_density",
    "layer_temperatures",
    "LayerThermal",
    "LocalityModel",
    "memory_wall_gap",
    "miss_penalty",
    "miss_rate",
    "offered_load",
    "pareto",
    "Question",
    "queuing_delay",
    "SaturationError",
    "ScalingQuery",
    "stacked_power_density",
    "StackGeometry",
    "StacklawError",
    "sweep",
    "SweepRow",
    "SweepSpec",
    "thermal_feasible",
    "ThermalCheck",
    "ThermalStack",
    "TrafficModel",
    "trailing_edge",
    "tsv_area_budget",
    "TsvBudget",
    "TsvSpec",
    "UndefinedIndexError",
    "usable_area",
    "utilization",
    "wire_length_ratio",
    "wire_performance_factor",
]
