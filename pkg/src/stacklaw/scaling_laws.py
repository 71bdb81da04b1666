"""System-scaling algebra for threads (T), off-chip bandwidth (B) and cache (C).

With miss rate ``m(C) ~ C ** -alpha``, per-thread bandwidth demand is
proportional to the miss rate. Multiplying threads by ``k`` through
replication while total bandwidth only grows by ``b`` leaves each copy with
``b / k`` of its original bandwidth, so each copy's miss rate must fall by
that ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Historical annual improvement rates. The memory figure is an upper bound
# ("less than 10%"), used here as the boundary value.
CPU_PERF_RATE = 0.60
MEMORY_ACCESS_RATE = 0.10


@dataclass(frozen=True)
class ScalingQuery:
    thread_factor: float
    bandwidth_factor: float = 1.0
    alpha: float = 0.5

    def __post_init__(self):
        if not self.thread_factor > 0:
            raise DomainError(f"thread_factor must be > 0, got {self.thread_factor}")
        if not self.bandwidth_factor > 0:
            raise DomainError(f"bandwidth_factor must be > 0, got {self.bandwidth_factor}")
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must be in (0, 1], got {self.alpha}")


def capacity_for_bandwidth(b: float, alpha: float = 0.5) -> float:
    """Per-system capacity multiplier that compensates a bandwidth multiplier ``b``."""
    if not b > 0:
        raise DomainError(f"bandwidth multiplier must be > 0, got {b}")
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must be in (0, 1], got {alpha}")
    return (1.0 / b) ** (1.0 / alpha)


def capacity_factor(query: ScalingQuery) -> float:
    """Total on-chip cache multiplier needed to scale threads by ``k``.

    ``k`` replicas, each getting ``b / k`` of the original bandwidth, each
    needing ``(k / b) ** (1 / alpha)`` times its original capacity.
    """
    k, b = query.thread_factor, query.bandwidth_factor
    return k * (k / b) ** (1.0 / query.alpha)


def memory_wall_gap(years: float, cpu_rate: float = CPU_PERF_RATE,
                    mem_rate: float = MEMORY_ACCESS_RATE) -> float:
    """Ratio by which processor speed outgrows memory access time after ``years``."""
    if years < 0:
        raise DomainError(f"years must be >= 0, got {years}")
    if cpu_rate <= -1 or mem_rate <= -1:
        raise DomainError("growth rates must be > -1")
    return ((1.0 + cpu_rate) / (1.0 + mem_rate)) ** years


def wire_performance_factor(layers: int) -> float:
    """Wire-limited speedup of an ``layers``-high stack over a planar die."""
    if layers < 1:
        raise DomainError(f"layers must be >= 1, got {layers}")
    return math.sqrt(layers)


def wire_length_ratio(planar_length_mm: float, vertical_length_um: float) -> float:
    if not (planar_length_mm > 0 and vertical_length_um > 0):
        raise DomainError("wire lengths must be > 0")
    return planar_length_mm * 1000.0 / vertical_length_um
