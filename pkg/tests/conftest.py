from __future__ import annotations

import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from gamefuzz import (
    AxisAlignedBox,
    Coordinate,
    PlayStyle,
    SimConfig,
    StuckRegion,
    WorldMap,
    load_scenario,
    load_style,
)
from gamefuzz.playstyle import Categorical

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"
DESK_SCENARIO = SCENARIOS / "desk_200.json"
SPARSE_STYLE = SCENARIOS / "styles" / "sparse.json"
THOROUGH_STYLE = SCENARIOS / "styles" / "thorough.json"

_ACCEPTANCE: list[tuple[str, bool, float]] = []


@contextmanager
def criterion(label: str):
    """Record a pass/fail line for the acceptance summary."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        _ACCEPTANCE.append((label, ok, time.perf_counter() - start))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, elapsed in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  ({elapsed:.2f}s)")


def make_style(name="test", pass_probability=0.5, counts=None, dists=None, quadrants=(0.25, 0.25, 0.25, 0.25),
               priorities=None) -> PlayStyle:
    return PlayStyle(
        name,
        pass_probability,
        None if priorities is None else Categorical.from_weights(priorities),
        Categorical.from_weights(counts or {0: 1, 1: 1, 2: 1}),
        Categorical.from_weights(dists or {50: 1}),
        quadrants,
    )


@pytest.fixture
def open_world() -> WorldMap:
    """100 x 100 map with three keypoints and nothing in the way."""
    return WorldMap(100.0, 100.0, keypoints=[(1, (20.0, 20.0)), (2, (80.0, 30.0)), (3, (60.0, 80.0))])


@pytest.fixture
def trap_world() -> WorldMap:
    return WorldMap(
        100.0, 100.0,
        keypoints=[(1, (20.0, 20.0)), (2, (80.0, 80.0))],
        obstacles=[AxisAlignedBox((70.0, 10.0), (75.0, 15.0))],
        stuck_regions=[StuckRegion(7, AxisAlignedBox((40.0, 40.0), (44.0, 44.0)))],
    )


@pytest.fixture
def style() -> PlayStyle:
    return make_style()


@pytest.fixture(scope="session")
def desk():
    return load_scenario(DESK_SCENARIO)


@pytest.fixture(scope="session")
def desk_styles():
    return load_style(SPARSE_STYLE), load_style(THOROUGH_STYLE)


@pytest.fixture
def fast_sim() -> SimConfig:
    return SimConfig(speed=0.5, arrival_radius=1.0, stuck_window=20, timeout_frames=2_000)


def c(x: float, z: float) -> Coordinate:
    return Coordinate(float(x), float(z))
