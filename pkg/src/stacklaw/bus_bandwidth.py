"""Bus load, utilization and queueing.

The service time of one miss on the bus is the trailing edge (TE) of the line
transfer, so utilization is ``lambda * TE``. Waiting time uses an M/D/1 queue:
Poisson arrivals, deterministic service of exactly TE cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cache_locality import BusSpec, trailing_edge
from .errors import DomainError, SaturationError

QUEUE_MODEL = "M/D/1"


@dataclass(frozen=True)
class TrafficModel:
    threads: int
    accesses_per_cycle_per_thread: float
    miss_ratio: float

    def __post_init__(self):
        if self.threads < 1:
            raise DomainError(f"threads must be >= 1, got {self.threads}")
        if not self.accesses_per_cycle_per_thread > 0:
            raise DomainError("accesses_per_cycle_per_thread must be > 0")
        if not 0 <= self.miss_ratio <= 1:
            raise DomainError(f"miss_ratio must be in [0, 1], got {self.miss_ratio}")


@dataclass(frozen=True)
class BusState:
    """Utilization of the bus and the service time it was computed with.

    ``saturated`` is set when rho >= 1; such a bus has no steady state.
    """

    utilization: float
    service_time: float
    saturated: bool = False
    model: str = QUEUE_MODEL


def offered_load(traffic: TrafficModel) -> float:
    """Misses per processor cycle arriving at the bus."""
    return traffic.threads * traffic.accesses_per_cycle_per_thread * traffic.miss_ratio


def utilization(lam: float, te: float) -> BusState:
    if lam < 0 or te < 0:
        raise DomainError("arrival rate and service time must be >= 0")
    rho = lam * te
    return BusState(utilization=rho, service_time=te, saturated=rho >= 1)


def queuing_delay(rho: float, te: float) -> float:
    """Expected M/D/1 wait in cycles: ``rho * te / (2 * (1 - rho))``."""
    if rho >= 1:
        raise SaturationError(f"bus utilization {rho} >= 1 has no steady-state wait")
    if rho < 0 or te < 0:
        raise DomainError("utilization and service time must be >= 0")
    return rho * te / (2.0 * (1.0 - rho))


def miss_penalty(bus: BusSpec, line_size: int, wait: float) -> float:
    """Cycles from miss to last byte: leading edge + queueing + transfer."""
    if wait < 0:
        raise DomainError(f"wait must be >= 0, got {wait}")
    return bus.leading_edge + wait + trailing_edge(line_size, bus)
