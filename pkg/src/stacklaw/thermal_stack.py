"""Steady-state temperatures of a die stack cooled from one side.

Heat flows straight down each tile column to the heatsink; there is no
lateral spreading, which over-predicts hotspots. Layer 0 sits on the sink.
The interface below layer ``j`` carries the power of every layer at or above
``j`` in that column, so resistances accumulate with distance from the sink.

Resistances are given per layer in K/W. With ``G`` equal tiles, each tile
column sees ``G`` times that value, so a 1x1 grid is the whole-layer model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DomainError, UndefinedIndexError


def _as_grid(power_map) -> tuple:
    arr = np.asarray(power_map, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.size == 0:
        raise DomainError("power_map must be a non-empty 2D grid")
    return tuple(tuple(float(v) for v in row) for row in arr)


@dataclass(frozen=True)
class LayerThermal:
    """One die layer.

    ``power_map`` holds per-tile power in W. ``r_above`` (K/W, whole layer,
    BEOL included) couples this layer to the one beneath it; layer 0 is
    coupled to the sink by the stack's ``r_sink`` instead, so its value is
    not used.
    """

    power_map: tuple
    r_above: float

    def __post_init__(self):
        object.__setattr__(self, "power_map", _as_grid(self.power_map))
        if not self.r_above > 0:
            raise DomainError(f"r_above must be > 0, got {self.r_above}")
        if any(p < 0 for row in self.power_map for p in row):
            raise DomainError("tile powers must be >= 0")

    @property
    def shape(self) -> tuple:
        return (len(self.power_map), len(self.power_map[0]))

    @property
    def power(self) -> float:
        return float(np.sum(self.power_map))

    def array(self) -> np.ndarray:
        return np.asarray(self.power_map, dtype=float)


@dataclass(frozen=True)
class ThermalStack:
    layers: tuple
    r_sink: float
    t_ambient: float

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise DomainError("a thermal stack needs at least one layer")
        if not self.r_sink > 0:
            raise DomainError(f"r_sink must be > 0, got {self.r_sink}")
        shapes = {layer.shape for layer in self.layers}
        if len(shapes) != 1:
            raise ConfigError(f"layers have mismatched power-map grids: {sorted(shapes)}")

    @property
    def grid_dims(self) -> tuple:
        return self.layers[0].shape

    @property
    def total_power(self) -> float:
        return float(sum(layer.power for layer in self.layers))

    def power_array(self) -> np.ndarray:
        """Powers as an array of shape (layers, rows, cols)."""
        return np.stack([layer.array() for layer in self.layers])


@dataclass(frozen=True)
class ThermalCheck:
    feasible: bool
    worst_layer: int
    worst_tile: tuple
    worst_temp: float


def interface_heat(stack: ThermalStack) -> np.ndarray:
    """Heat (W) crossing the interface below each layer, per tile.

    Entry ``[0]`` is the heat entering the sink.
    """
    p = stack.power_array()
    return np.cumsum(p[::-1], axis=0)[::-1]


def layer_temperatures(stack: ThermalStack) -> np.ndarray:
    """Temperature (deg C) of every tile of every layer, shape (layers, rows, cols)."""
    tiles = stack.grid_dims[0] * stack.grid_dims[1]
    q = interface_heat(stack)
    r = np.array([stack.r_sink] + [layer.r_above for layer in stack.layers[1:]]) * tiles
    rise = np.cumsum(r[:, None, None] * q, axis=0)
    return stack.t_ambient + rise


def hotspot_overlap_index(stack: ThermalStack) -> float:
    """Max over mean of the column-summed power; 1 means perfectly uniform."""
    columns = stack.power_array().sum(axis=0)
    mean = columns.mean()
    if not mean > 0:
        raise UndefinedIndexError("hotspot overlap index is undefined for a zero-power stack")
    return float(columns.max() / mean)


def thermal_feasible(stack: ThermalStack, t_max: float) -> ThermalCheck:
    temps = layer_temperatures(stack)
    # argmax returns the first maximum: lowest layer, then row-major tile
    flat = int(np.argmax(temps))
    layer, row, col = np.unravel_index(flat, temps.shape)
    worst = float(temps[layer, row, col])
    return ThermalCheck(
        feasible=worst <= t_max,
        worst_layer=int(layer),
        worst_tile=(int(row), int(col)),
        worst_temp=worst,
    )


def stacked_power_density(layers: Sequence[LayerThermal], footprint: float) -> float:
    """Total stack power per unit footprint (W/mm^2)."""
    if not footprint > 0:
        raise DomainError(f"footprint must be > 0, got {footprint}")
    return sum(layer.power for layer in layers) / footprint
