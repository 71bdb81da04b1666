"""Closed-form cache behaviour.

Miss ratio follows a power law in capacity, ``m(C) = m0 * (C / c0) ** -alpha``,
anchored at a measured reference point ``(c0, m0)``. The rest of the module is
line/bus arithmetic: how many processor cycles a line occupies the bus, how
big the directory is, and how much x-y bus dislocation a stacked hierarchy
avoids when it is partitioned by bit position and congruence class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

DEFAULT_ALPHA = 0.5


def _is_pow2(value) -> bool:
    return isinstance(value, int) and value > 0 and value & (value - 1) == 0


@dataclass(frozen=True)
class LocalityModel:
    """Workload miss-rate law anchored at ``(c0, m0)``.

    c0 is in bytes, m0 in misses per reference, alpha is the root exponent
    (0.5 means the miss rate falls with the square root of capacity).
    """

    c0: float
    m0: float
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not self.c0 > 0:
            raise DomainError(f"c0 must be > 0, got {self.c0}")
        if not 0 < self.m0 <= 1:
            raise DomainError(f"m0 must be in (0, 1], got {self.m0}")
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must be in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class CacheLevelSpec:
    """Geometry of one cache level. Sizes are bytes."""

    capacity: int
    line_size: int
    associativity: int = 1

    def __post_init__(self):
        if not _is_pow2(self.capacity):
            raise DomainError(f"capacity must be a power of 2, got {self.capacity}")
        if not _is_pow2(self.line_size):
            raise DomainError(f"line_size must be a power of 2, got {self.line_size}")
        if self.line_size > self.capacity:
            raise DomainError(
                f"line_size ({self.line_size}) exceeds capacity ({self.capacity})"
            )
        if not isinstance(self.associativity, int) or self.associativity < 1:
            raise DomainError(f"associativity must be an integer >= 1, got {self.associativity}")
        if self.capacity % (self.line_size * self.associativity):
            raise DomainError(
                f"capacity ({self.capacity}) is not a multiple of "
                f"line_size x associativity ({self.line_size} x {self.associativity})"
            )

    @property
    def lines(self) -> int:
        return self.capacity // self.line_size

    @property
    def congruence_classes(self) -> int:
        return self.capacity // (self.line_size * self.associativity)


@dataclass(frozen=True)
class BusSpec:
    """Off-stack bus.

    width is bytes per bus clock, cycles_per_bus_clock is processor cycles per
    bus clock, leading_edge is processor cycles from the miss to the first
    returned packet.
    """

    width: int
    cycles_per_bus_clock: int = 1
    leading_edge: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"bus width must be > 0, got {self.width}")
        if not isinstance(self.cycles_per_bus_clock, int) or self.cycles_per_bus_clock < 1:
            raise DomainError(
                f"cycles_per_bus_clock must be an integer >= 1, got {self.cycles_per_bus_clock}"
            )
        if not self.leading_edge >= 0:
            raise DomainError(f"leading_edge must be >= 0, got {self.leading_edge}")

    @property
    def bandwidth(self) -> float:
        """Payload bytes per processor cycle."""
        return self.width / self.cycles_per_bus_clock


@dataclass(frozen=True)
class DirectoryStats:
    entries: int
    congruence_classes: int


def miss_rate(capacity, model: LocalityModel) -> float:
    """Miss ratio of a cache of ``capacity`` bytes, clamped to 1."""
    if not capacity > 0:
        raise DomainError(f"capacity must be > 0, got {capacity}")
    return min(1.0, model.m0 * (capacity / model.c0) ** -model.alpha)


def trailing_edge(line_size, bus: BusSpec) -> int:
    """Processor cycles the bus is busy transferring one line.

    A partial last packet still costs a full bus clock.
    """
    if not line_size > 0:
        raise DomainError(f"line_size must be > 0, got {line_size}")
    if isinstance(line_size, int) and isinstance(bus.width, int):
        packets = -(-line_size // bus.width)
    else:
        packets = math.ceil(line_size / bus.width)
    return packets * bus.cycles_per_bus_clock


def directory_stats(level: CacheLevelSpec) -> DirectoryStats:
    return DirectoryStats(entries=level.lines, congruence_classes=level.congruence_classes)


def dislocation_factor(line_bits: int, congruence_classes: int) -> int:
    """Factor by which x-y bus dislocations shrink in a partitioned stacked cache.

    Splitting the hierarchy by bit position gives ``line_bits`` independent
    caches, and each of those splits again by congruence class. ECC/parity
    bits count only if the caller includes them in ``line_bits``.
    """
    if line_bits < 1 or congruence_classes < 1:
        raise DomainError("line_bits and congruence_classes must both be >= 1")
    return line_bits * congruence_classes
