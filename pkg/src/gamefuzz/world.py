"""Top-down 2D model of the game world.

The ground plane uses ``x`` for east and ``z`` for north, so a forward vector
of ``(0, 1)`` points north and "right" is that vector rotated by -90 degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InvariantError

QUADRANT_NAMES = {1: "front-right", 2: "front-left", 3: "back-left", 4: "back-right"}

# (sign along forward, sign along right) for each quadrant
_QUADRANT_SIGNS = {1: (1, 1), 2: (1, -1), 3: (-1, -1), 4: (-1, 1)}


class Coordinate(NamedTuple):
    x: float
    z: float

    def __sub__(self, other):
        return Coordinate(self.x - other.x, self.z - other.z)

    def norm(self) -> float:
        return math.hypot(self.x, self.z)


@dataclass(frozen=True)
class AxisAlignedBox:
    min: Coordinate
    max: Coordinate

    def __post_init__(self) -> None:
        object.__setattr__(self, "min", Coordinate(float(self.min[0]), float(self.min[1])))
        object.__setattr__(self, "max", Coordinate(float(self.max[0]), float(self.max[1])))
        if not (self.min.x < self.max.x and self.min.z < self.max.z):
            raise InvariantError(f"box min {tuple(self.min)} must be below max {tuple(self.max)}")


class Keypoint(NamedTuple):
    id: int
    location: Coordinate


class StuckRegion(NamedTuple):
    id: int
    box: AxisAlignedBox


def point_in_box(box: AxisAlignedBox, p: Coordinate) -> bool:
    """Closed-interval containment."""
    return box.min.x <= p[0] <= box.max.x and box.min.z <= p[1] <= box.max.z


@dataclass(frozen=True)
class WorldMap:
    width: float
    height: float
    keypoints: tuple[Keypoint, ...] = ()
    obstacles: tuple[AxisAlignedBox, ...] = ()
    stuck_regions: tuple[StuckRegion, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "keypoints",
            tuple(Keypoint(int(k[0]), Coordinate(float(k[1][0]), float(k[1][1]))) for k in self.keypoints),
        )
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "stuck_regions", tuple(StuckRegion(int(r[0]), r[1]) for r in self.stuck_regions))
        self._validate()

    def _validate(self) -> None:
        for name in ("width", "height"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvariantError(f"must be a positive finite number, got {value!r}", f"map.{name}")

        for i, kp in enumerate(self.keypoints):
            if kp.id != i + 1:
                raise InvariantError(f"keypoint ids must be 1..n in order; expected {i + 1}, got {kp.id}",
                                     f"map.keypoints[{i}].id")
            loc = kp.location
            if not (math.isfinite(loc.x) and math.isfinite(loc.z)):
                raise InvariantError("coordinates must be finite", f"map.keypoints[{i}].location")
            if not (0 < loc.x < self.width and 0 < loc.z < self.height):
                raise InvariantError(f"{tuple(loc)} is not strictly inside the {self.width}x{self.height} map",
                                     f"map.keypoints[{i}].location")
            for j, box in enumerate(self.obstacles):
                if point_in_box(box, loc):
                    raise InvariantError(f"keypoint {kp.id} lies inside obstacle {j}", f"map.keypoints[{i}].location")
            for region in self.stuck_regions:
                if point_in_box(region.box, loc):
                    raise InvariantError(f"keypoint {kp.id} lies inside stuck region {region.id}",
                                         f"map.keypoints[{i}].location")

        seen: set[int] = set()
        for i, region in enumerate(self.stuck_regions):
            if region.id < 1:
                raise InvariantError(f"stuck region id must be positive, got {region.id}", f"map.stuck_regions[{i}].id")
            if region.id in seen:
                raise InvariantError(f"duplicate stuck region id {region.id}", f"map.stuck_regions[{i}].id")
            seen.add(region.id)

    @property
    def center(self) -> Coordinate:
        return Coordinate(self.width / 2.0, self.height / 2.0)

    @property
    def n_keypoints(self) -> int:
        return len(self.keypoints)

    @property
    def region_ids(self) -> frozenset[int]:
        return frozenset(r.id for r in self.stuck_regions)

    def contains(self, p: Sequence[float]) -> bool:
        return 0.0 <= p[0] <= self.width and 0.0 <= p[1] <= self.height

    def region_at(self, p: Coordinate) -> int | None:
        """Id of the first stuck region containing ``p``, if any."""
        for region in self.stuck_regions:
            if point_in_box(region.box, p):
                return region.id
        return None


def min_edge_distance(world: WorldMap, p: Coordinate) -> float:
    """Distance from ``p`` to the nearest side of the map.

    Raises ValueError unless ``p`` lies strictly inside the map.
    """
    x, z = p
    if not (0 < x < world.width and 0 < z < world.height):
        raise ValueError(f"point {tuple(p)} is outside the {world.width}x{world.height} map")
    return min(x, world.width - x, z, world.height - z)


def right_of(forward: Coordinate) -> Coordinate:
    return Coordinate(forward[1], -forward[0])


def quadrant_contains(origin: Coordinate, forward: Coordinate, quadrant: int, p: Coordinate) -> bool:
    """True if ``p`` falls in the closed quarter-plane ``quadrant`` about ``origin``.

    Quadrants: 1 front-right, 2 front-left, 3 back-left, 4 back-right.
    """
    dx = p[0] - origin[0]
    dz = p[1] - origin[1]
    along = dx * forward[0] + dz * forward[1]
    across = dx * forward[1] - dz * forward[0]
    s_along, s_across = _QUADRANT_SIGNS[quadrant]
    return along * s_along >= 0 and across * s_across >= 0
