from pathlib import Path

import pytest

from stacklaw import (BusSpec, CacheLevelSpec, DesignPoint, LayerThermal, LocalityModel,
                      StackGeometry, ThermalStack, TsvSpec)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def make_stack(maps, r_sink=0.2, r_above=0.1, ambient=40.0):
    layers = [LayerThermal(m, r_above) for m in maps]
    return ThermalStack(layers, r_sink, ambient)


def make_point(threads=4, capacity=1 << 22, line_size=128, width=16, cycles=4,
               leading_edge=100.0, alpha=0.5, m0=0.02, c0=1 << 20, maps=None, n=None,
               x=10.0, **kw):
    if maps is None:
        maps = [[[50.0]], [[50.0]]]
    n = n or len(maps)
    return DesignPoint(
        threads=threads,
        accesses_per_cycle_per_thread=kw.pop("apc", 0.02),
        caches=(CacheLevelSpec(32768, 64, 4), CacheLevelSpec(capacity, line_size, 8)),
        locality=LocalityModel(c0, m0, alpha),
        bus=BusSpec(width, cycles, leading_edge),
        geometry=StackGeometry(x, n, 50.0),
        tsv=TsvSpec(5.0, 10.0, 0.1, 100.0),
        thermal=make_stack(maps),
        base_cpi=kw.pop("base_cpi", 1.0),
        refs_per_instr=kw.pop("refs_per_instr", 0.02),
        **kw,
    )


@pytest.fixture
def point():
    return make_point()


@pytest.fixture
def configs_dir():
    return CONFIGS


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            number, title = value
            previous = _CRITERIA.get(number, (title, True))[1]
            _CRITERIA[number] = (title, previous and report.outcome == "passed")


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", tuple(marker.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] AC{number:02d} {title}")
