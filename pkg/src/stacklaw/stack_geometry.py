"""Physical stack arithmetic.

Units: edge lengths in mm, layer thickness and TSV dimensions in um, areas
of whole layers in mm^2 and TSV cells in um^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, GeometryError

UM2_PER_MM2 = 1.0e6

# Postulated knee of the TSV area fraction. Above it the stack is probably
# too tall for its power and TSV current limits.
TSV_FRACTION_LIMIT = 1.0 / math.e

# Catalog of interconnect technology points, pitch in um.
MICROBUMP_PITCH_UM = 50.0
MICROBUMP_DIAMETER_UM = 25.0
VIA_DENSITY_PER_CM2 = 100_000
IO_DENSITY_GAIN = 16


class GrowthAdvice(enum.Enum):
    ADD_LAYER = "AddLayer"
    GROW_FOOTPRINT = "GrowFootprint"
    INDIFFERENT = "Indifferent"


class GrowthMode(enum.Enum):
    PAPER_APPROX = "PaperApprox"
    EXACT = "Exact"


@dataclass(frozen=True)
class StackGeometry:
    x: float
    n: int
    t: float
    tsv_fraction: float = 0.0

    def __post_init__(self):
        if not self.x > 0:
            raise DomainError(f"edge length x must be > 0, got {self.x}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"layer count n must be an integer >= 1, got {self.n}")
        if not self.t > 0:
            raise DomainError(f"layer thickness t must be > 0, got {self.t}")
        if not 0 <= self.tsv_fraction <= 1:
            raise DomainError(f"tsv_fraction must be in [0, 1], got {self.tsv_fraction}")

    @property
    def layer_area(self) -> float:
        return self.x * self.x

    @property
    def height_mm(self) -> float:
        return self.n * self.t / 1000.0


@dataclass(frozen=True)
class TsvSpec:
    diameter: float
    pitch: float
    current_limit: float
    cell_area: float

    def __post_init__(self):
        if not self.diameter > 0:
            raise DomainError(f"TSV diameter must be > 0, got {self.diameter}")
        if self.pitch < self.diameter:
            raise DomainError(
                f"TSV pitch ({self.pitch}) is smaller than diameter ({self.diameter})"
            )
        if not self.current_limit > 0:
            raise DomainError(f"TSV current_limit must be > 0, got {self.current_limit}")
        if self.cell_area < self.diameter ** 2:
            raise DomainError(
                f"TSV cell_area ({self.cell_area}) is smaller than diameter^2 ({self.diameter ** 2})"
            )


@dataclass(frozen=True)
class TsvBudget:
    fraction: float
    tsv_count: int
    feasible: bool


def _compare(lhs: float, rhs: float) -> GrowthAdvice:
    if lhs > rhs:
        return GrowthAdvice.ADD_LAYER
    if lhs < rhs:
        return GrowthAdvice.GROW_FOOTPRINT
    return GrowthAdvice.INDIFFERENT


def growth_advice(x: float, n: int, delta: float,
                  mode: GrowthMode = GrowthMode.EXACT) -> GrowthAdvice:
    """Whether a layer or a wider footprint buys more circuit area.

    Adding a layer gains ``x**2``. Growing every layer's edge by ``delta``
    gains ``n * (2*delta*x + delta**2)``. PAPER_APPROX drops the
    ``n * delta**2`` term, which reduces the test to ``n < x / (2*delta)``.
    """
    if not (x > 0 and delta > 0) or n < 1:
        raise DomainError("growth_advice needs x > 0, n >= 1, delta > 0")
    mode = GrowthMode(mode)
    # exact rationals so that ties come out Indifferent, not rounding noise
    x, n, delta = Fraction(x), Fraction(n), Fraction(delta)
    if mode is GrowthMode.PAPER_APPROX:
        return _compare(x / (2 * delta), n)
    return _compare(x * x, n * (2 * delta * x + delta * delta))


def power_tsv_count(total_power: float, supply_voltage: float, tsv: TsvSpec) -> int:
    """TSVs needed to carry ``total_power / supply_voltage`` amps."""
    return math.ceil(total_power / (supply_voltage * tsv.current_limit))


def tsv_area_budget(total_power: float, supply_voltage: float, tsv: TsvSpec,
                    layer_area: float, limit: float = TSV_FRACTION_LIMIT) -> TsvBudget:
    """Fraction of a layer consumed by power-delivery TSVs.

    Counts TSVs from worst-case DC current ``P / V`` with no derating; pass a
    derated ``current_limit`` to model margins. ``layer_area`` is in mm^2.
    """
    if total_power < 0:
        raise DomainError(f"total_power must be >= 0, got {total_power}")
    if not (supply_voltage > 0 and layer_area > 0):
        raise DomainError("supply_voltage and layer_area must be > 0")
    count = power_tsv_count(total_power, supply_voltage, tsv)
    fraction = count * tsv.cell_area / (layer_area * UM2_PER_MM2)
    if fraction > 1:
        raise GeometryError(
            f"{count} TSVs need {fraction:.3g} of the layer area; more than the layer itself"
        )
    return TsvBudget(fraction=fraction, tsv_count=count, feasible=fraction <= limit)


def cube_check(geom: StackGeometry) -> bool:
    """True while the stack is no taller than its edge length."""
    return geom.n * geom.t <= geom.x * 1000.0


def interconnect_density(pitch_um: float) -> float:
    """Vertical connections per mm^2 on a square grid of the given pitch."""
    if not pitch_um > 0:
        raise DomainError(f"pitch must be > 0, got {pitch_um}")
    return (1000.0 / pitch_um) ** 2


def usable_area(geom: StackGeometry) -> float:
    """Circuit area (mm^2) left across all layers after TSVs."""
    return geom.n * geom.layer_area * (1.0 - geom.tsv_fraction)
