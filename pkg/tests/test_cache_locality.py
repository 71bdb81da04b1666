import math

import pytest
from hypothesis import given, strategies as st

from stacklaw import (BusSpec, CacheLevelSpec, DomainError, LocalityModel, directory_stats,
                      dislocation_factor, miss_rate, trailing_edge)

C0 = 1 << 20


def test_miss_rate_reference_point():
    model = LocalityModel(C0, 0.04)
    assert miss_rate(C0, model) == 0.04


def test_default_alpha_is_square_root():
    assert LocalityModel(C0, 0.04).alpha == 0.5


def test_quadrupled_capacity_halves_miss_rate():
    assert miss_rate(4 * C0, LocalityModel(C0, 0.04, 0.5)) == pytest.approx(0.02, rel=1e-15)


def test_quarter_capacity_doubles_miss_rate():
    assert miss_rate(C0 / 4, LocalityModel(C0, 0.04, 0.5)) == pytest.approx(0.08, rel=1e-15)


def test_miss_rate_clamps_at_one():
    model = LocalityModel(C0, 0.5, 1.0)
    assert miss_rate(1, model) == 1.0


@pytest.mark.parametrize("capacity", [0, -1, -1e9])
def test_miss_rate_rejects_non_positive_capacity(capacity):
    with pytest.raises(DomainError):
        miss_rate(capacity, LocalityModel(C0, 0.04))


@pytest.mark.parametrize("c0,m0,alpha", [(0, 0.1, 0.5), (1, 0, 0.5), (1, 1.5, 0.5),
                                         (1, 0.1, 0), (1, 0.1, 1.5)])
def test_locality_model_invariants(c0, m0, alpha):
    with pytest.raises(DomainError):
        LocalityModel(c0, m0, alpha)


@given(st.floats(0.05, 1.0), st.floats(1e-4, 1.0), st.floats(0.0, 10.0), st.floats(0.01, 5.0))
def test_log_log_slope_is_minus_alpha(alpha, m0, log2_cap, step):
    model = LocalityModel(C0, m0, alpha)
    c1 = C0 * 2.0 ** log2_cap
    c2 = c1 * 2.0 ** step
    m1, m2 = miss_rate(c1, model), miss_rate(c2, model)
    assert m2 <= m1
    if m1 < 1:
        slope = (math.log(m2) - math.log(m1)) / (math.log(c2) - math.log(c1))
        assert slope == pytest.approx(-alpha, rel=1e-9)


@given(st.floats(0.01, 1.0), st.floats(1e-4, 1.0), st.floats(-20, 20), st.floats(-20, 20))
def test_miss_rate_non_increasing(alpha, m0, a, b):
    model = LocalityModel(C0, m0, alpha)
    lo, hi = sorted((C0 * 2.0 ** a, C0 * 2.0 ** b))
    assert miss_rate(hi, model) <= miss_rate(lo, model) <= 1.0


def test_trailing_edge_examples():
    assert trailing_edge(128, BusSpec(16, 4)) == 32
    assert trailing_edge(64, BusSpec(64, 1)) == 1
    assert trailing_edge(256, BusSpec(16, 4)) == 64


def test_trailing_edge_rounds_partial_packet_up():
    assert trailing_edge(100, BusSpec(16, 2)) == 7 * 2


@given(st.integers(1, 64), st.integers(1, 64), st.integers(1, 16))
def test_trailing_edge_doubles_for_aligned_lines(packets, width, cycles):
    bus = BusSpec(width, cycles)
    line = packets * width
    assert trailing_edge(2 * line, bus) == 2 * trailing_edge(line, bus)


@given(st.integers(1, 4096), st.integers(1, 256), st.integers(1, 16), st.integers(1, 8))
def test_trailing_edge_scale_invariant(line, width, cycles, factor):
    assert trailing_edge(line * factor, BusSpec(width * factor, cycles)) == \
        trailing_edge(line, BusSpec(width, cycles))


def test_directory_examples():
    assert directory_stats(CacheLevelSpec(1 << 20, 128)).entries == 8192
    base = directory_stats(CacheLevelSpec(1 << 20, 128))
    assert directory_stats(CacheLevelSpec(1 << 21, 128)).entries == 2 * base.entries
    assert directory_stats(CacheLevelSpec(1 << 21, 256)).entries == base.entries


def test_congruence_classes():
    level = CacheLevelSpec(1 << 20, 128, 8)
    assert level.congruence_classes == 1024
    assert directory_stats(level).congruence_classes == 1024


@given(st.integers(6, 30), st.integers(0, 12), st.integers(0, 4))
def test_entries_times_line_is_capacity(log_cap, log_line, log_ways):
    line = 1 << min(log_line, log_cap)
    ways = 1 << log_ways
    cap = 1 << log_cap
    if line * ways > cap:
        return
    level = CacheLevelSpec(cap, line, ways)
    assert directory_stats(level).entries * line == cap


@pytest.mark.parametrize("cap,line,ways", [(1000, 64, 1), (1024, 48, 1), (64, 128, 1),
                                           (1024, 64, 0), (1024, 256, 8)])
def test_cache_level_invariants(cap, line, ways):
    with pytest.raises(DomainError):
        CacheLevelSpec(cap, line, ways)


def test_line_larger_than_capacity_names_both_fields():
    with pytest.raises(DomainError, match=r"line_size.*capacity"):
        CacheLevelSpec(64, 128)


def test_dislocation_examples():
    assert dislocation_factor(1024, 1024) == 1_048_576
    assert dislocation_factor(1024, 1024) >= 10 ** 6
    assert dislocation_factor(1, 1) == 1
    assert dislocation_factor(512, 2048) == 1_048_576


@given(st.integers(1, 1000), st.integers(1, 1000), st.integers(1, 1000))
def test_dislocation_multiplicative(a, b, c):
    assert dislocation_factor(a * b, c) == dislocation_factor(a, c) * b


def test_dislocation_rejects_zero():
    with pytest.raises(DomainError):
        dislocation_factor(0, 4)
