"""Frame-stepped execution of a route by a kinematic character.

Each frame the character moves ``speed`` units straight toward its current
target.  Obstacles stop it at their boundary (no sliding); stuck regions hold
it in place for the rest of the scene.  A scene ends as soon as the route is
complete (Pass), the character has not moved ``stuck_epsilon`` within the last
``stuck_window`` frames (Fail), or ``timeout_frames`` have elapsed (Timeout).
"""

from __future__ import annotations

import copy
import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvariantError
from .local_fuzz import RoutePoint
from .world import Coordinate, WorldMap


@dataclass(frozen=True)
class SimConfig:
    speed: float = 0.1
    arrival_radius: float = 0.5
    stuck_epsilon: float = 0.01
    stuck_window: int = 120
    timeout_frames: int = 18_000
    frame_rate: float = 60.0

    def __post_init__(self) -> None:
        for name in ("speed", "arrival_radius", "stuck_epsilon", "stuck_window", "timeout_frames", "frame_rate"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) \
                    or value <= 0:
                raise InvariantError(f"must be a positive number, got {value!r}", f"sim.{name}")
        for name in ("stuck_window", "timeout_frames"):
            if int(getattr(self, name)) != getattr(self, name):
                raise InvariantError("must be an integer frame count", f"sim.{name}")
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.stuck_window < 2:
            raise InvariantError("must be at least 2", "sim.stuck_window")
        if self.timeout_frames <= self.stuck_window:
            raise InvariantError("must exceed stuck_window", "sim.timeout_frames")


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    TIMEOUT = "Timeout"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SceneOutcome:
    verdict: Verdict
    frames_used: int
    failure_coord: Coordinate | None = None
    failure_region_id: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "verdict", Verdict(self.verdict))
        if (self.failure_coord is not None) != (self.verdict is Verdict.FAIL):
            raise ValueError("failure_coord must be present exactly when the verdict is Fail")
        if self.failure_region_id is not None and self.verdict is not Verdict.FAIL:
            raise ValueError("only a Fail outcome can name a stuck region")


@dataclass
class CharacterState:
    position: Coordinate
    target_index: int = 0
    frames_elapsed: int = 0
    recent_positions: deque = field(default_factory=deque)
    trapped_region: int | None = None

    @classmethod
    def spawn(cls, start: Coordinate, cfg: SimConfig) -> CharacterState:
        return cls(Coordinate(float(start[0]), float(start[1])), recent_positions=deque(maxlen=cfg.stuck_window))


def _segment_entry(px: float, pz: float, qx: float, qz: float,
                   box: tuple[float, float, float, float]) -> tuple[float, int, float] | None:
    """Where segment p->q first enters the open interior of ``box``.

    Returns ``(t, axis, face)`` with ``t`` in [0, 1], or None if the segment
    never gets inside (grazing a face does not count).  ``axis`` is -1 when p
    is already inside.
    """
    t0, t1 = -math.inf, math.inf
    axis, face = -1, 0.0
    for ax, p, d, lo, hi in ((0, px, qx - px, box[0], box[2]), (1, pz, qz - pz, box[1], box[3])):
        if d == 0.0:
            if not lo < p < hi:
                return None
            continue
        ta, tb = (lo - p) / d, (hi - p) / d
        near_face = lo
        if ta > tb:
            ta, tb = tb, ta
            near_face = hi
        if ta > t0:
            t0, axis, face = ta, ax, near_face
        t1 = min(t1, tb)
    if max(t0, 0.0) >= min(t1, 1.0):
        return None
    if t0 < 0.0:
        return 0.0, -1, 0.0
    return t0, axis, face


def _overlaps(box: tuple[float, float, float, float], lox: float, loz: float, hix: float, hiz: float) -> bool:
    return box[0] <= hix and lox <= box[2] and box[1] <= hiz and loz <= box[3]


class _Mover:
    """Per-scene stepping kernel; caches the boxes near the current leg."""

    def __init__(self, route: Sequence[RoutePoint], world: WorldMap, cfg: SimConfig) -> None:
        self.targets = [(float(p.location[0]), float(p.location[1])) for p in route]
        self.obstacles = [(b.min.x, b.min.z, b.max.x, b.max.z) for b in world.obstacles]
        self.regions = [(r.id, (r.box.min.x, r.box.min.z, r.box.max.x, r.box.max.z)) for r in world.stuck_regions]
        self.speed = float(cfg.speed)
        self.arrival_sq = float(cfg.arrival_radius) ** 2
        self._leg = -1
        self._leg_obstacles: list = []
        self._leg_regions: list = []

    def _prepare_leg(self, index: int, x: float, z: float) -> None:
        tx, tz = self.targets[index]
        lox, hix = min(x, tx), max(x, tx)
        loz, hiz = min(z, tz), max(z, tz)
        self._leg = index
        self._leg_obstacles = [b for b in self.obstacles if _overlaps(b, lox, loz, hix, hiz)]
        self._leg_regions = [r for r in self.regions if _overlaps(r[1], lox, loz, hix, hiz)]

    def advance(self, state: CharacterState) -> None:
        """Step ``state`` forward by one frame, in place."""
        x, z = state.position
        index = state.target_index
        if index != self._leg:
            self._prepare_leg(index, x, z)
        tx, tz = self.targets[index]

        if state.trapped_region is None:
            dx, dz = tx - x, tz - z
            dist = math.hypot(dx, dz)
            if dist <= self.speed:
                nx, nz = tx, tz
            else:
                k = self.speed / dist
                nx, nz = x + dx * k, z + dz * k

            if self._leg_obstacles:
                best = None
                for box in self._leg_obstacles:
                    hit = _segment_entry(x, z, nx, nz, box)
                    if hit is not None and (best is None or hit[0] < best[0]):
                        best = hit
                if best is not None:
                    t, axis, face = best
                    if axis == -1:
                        nx, nz = x, z
                    elif axis == 0:
                        nx, nz = face, z + t * (nz - z)
                    else:
                        nx, nz = x + t * (nx - x), face
            x, z = nx, nz

            for region_id, box in self._leg_regions:
                if box[0] <= x <= box[2] and box[1] <= z <= box[3]:
                    state.trapped_region = region_id
                    break

        state.position = Coordinate(x, z)
        if state.trapped_region is None and (x - tx) ** 2 + (z - tz) ** 2 <= self.arrival_sq:
            state.target_index = index + 1
        state.frames_elapsed += 1
        state.recent_positions.append(state.position)


def step_frame(state: CharacterState, route: Sequence[RoutePoint], world: WorldMap, cfg: SimConfig) -> CharacterState:
    """Return the state one frame later; ``state`` itself is left untouched."""
    if not 0 <= state.target_index < len(route):
        raise ValueError(f"no target left: index {state.target_index} on a route of {len(route)} points")
    nxt = copy.copy(state)
    nxt.recent_positions = deque(state.recent_positions, maxlen=cfg.stuck_window)
    _Mover(route, world, cfg).advance(nxt)
    return nxt


def window_spread(positions: Sequence[Coordinate]) -> float:
    """Largest pairwise distance among ``positions``."""
    pts = list(positions)
    best = 0.0
    for i, (ax, az) in enumerate(pts):
        for bx, bz in pts[i + 1:]:
            best = max(best, math.hypot(ax - bx, az - bz))
    return best


def is_stuck(recent: deque, window: int, epsilon: float) -> bool:
    """True once ``window`` positions are recorded and all lie within ``epsilon`` of each other."""
    if len(recent) < window:
        return False
    lx, lz = recent[-1]
    px, pz = recent[-2]
    if math.hypot(lx - px, lz - pz) >= epsilon:
        return False
    # the spread is bracketed by [r, 2r] where r is the farthest point from the latest one
    r = max(math.hypot(lx - x, lz - z) for x, z in recent)
    if r >= epsilon:
        return False
    if 2.0 * r < epsilon:
        return True
    return window_spread(recent) < epsilon


def execute_scene(route: Sequence[RoutePoint], world: WorldMap, cfg: SimConfig, start: Coordinate) -> SceneOutcome:
    """Run one scene from ``start`` and classify it as Pass, Fail or Timeout."""
    if not route:
        return SceneOutcome(Verdict.PASS, 0)
    state = CharacterState.spawn(start, cfg)
    mover = _Mover(route, world, cfg)
    n_targets = len(route)
    window, epsilon, timeout = cfg.stuck_window, cfg.stuck_epsilon, cfg.timeout_frames
    recent = state.recent_positions
    while True:
        mover.advance(state)
        if state.target_index == n_targets:
            return SceneOutcome(Verdict.PASS, state.frames_elapsed)
        if is_stuck(recent, window, epsilon):
            region = state.trapped_region
            if region is None:
                region = world.region_at(state.position)
            return SceneOutcome(Verdict.FAIL, state.frames_elapsed, state.position, region)
        if state.frames_elapsed >= timeout:
            return SceneOutcome(Verdict.TIMEOUT, state.frames_elapsed)
