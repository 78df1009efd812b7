"""Waypoint insertion between consecutive strategy keypoints."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ConfigError
from .global_fuzz import Strategy
from .playstyle import LocalParams, RngStream
from .world import Coordinate, WorldMap, min_edge_distance, quadrant_contains

MAX_REJECTIONS = 64
DEFAULT_FORWARD = Coordinate(0.0, 1.0)

# (sign along forward, sign along right)
_SIGNS = {1: (1.0, 1.0), 2: (1.0, -1.0), 3: (-1.0, -1.0), 4: (-1.0, 1.0)}


class RoutePoint(NamedTuple):
    kind: str  # "keypoint" or "waypoint"
    id: int
    location: Coordinate


Route = tuple[RoutePoint, ...]


@dataclass(frozen=True)
class Sector:
    """Closed quarter-disc about ``origin``."""

    origin: Coordinate
    forward: Coordinate
    quadrant: int
    radius: float

    def contains(self, p: Coordinate, tol: float = 0.0) -> bool:
        dist = math.hypot(p[0] - self.origin[0], p[1] - self.origin[1])
        return dist <= self.radius + tol and quadrant_contains(self.origin, self.forward, self.quadrant, p)


def unit_toward(a: Coordinate, b: Coordinate) -> Coordinate:
    dx, dz = b[0] - a[0], b[1] - a[1]
    length = math.hypot(dx, dz)
    if length == 0.0:
        return DEFAULT_FORWARD
    return Coordinate(dx / length, dz / length)


def waypoint_region(origin: Coordinate, forward: Coordinate, lp: LocalParams, world: WorldMap) -> Sector:
    radius = lp.distance_pct / 100.0 * min_edge_distance(world, origin)
    return Sector(Coordinate(*origin), Coordinate(*forward), lp.quadrant, radius)


def _draw_point(sector: Sector, rng: RngStream) -> Coordinate:
    u, v = rng.uniform(2)
    r = sector.radius * math.sqrt(u)
    phi = 0.5 * math.pi * v
    s_along, s_across = _SIGNS[sector.quadrant]
    along = s_along * r * math.cos(phi)
    across = s_across * r * math.sin(phi)
    fx, fz = sector.forward
    # right = (fz, -fx)
    return Coordinate(sector.origin[0] + along * fx + across * fz,
                      sector.origin[1] + along * fz - across * fx)


def sample_waypoints(origin: Coordinate, forward: Coordinate, lp: LocalParams, world: WorldMap,
                     rng: RngStream) -> list[Coordinate]:
    """Draw ``lp.waypoint_count`` points area-uniformly from the quarter-disc."""
    sector = waypoint_region(origin, forward, lp, world)
    points = []
    for _ in range(lp.waypoint_count):
        for _ in range(MAX_REJECTIONS):
            p = _draw_point(sector, rng)
            if world.contains(p):
                break
        else:
            p = Coordinate(min(max(p[0], 0.0), world.width), min(max(p[1], 0.0), world.height))
        points.append(p)
    return points


def build_route(strategy: Strategy, lps: Sequence[LocalParams], start: Coordinate, world: WorldMap,
                rng: RngStream) -> Route:
    """Interleave the strategy's keypoints with sampled waypoints.

    Waypoints for segment i are drawn about keypoint i, facing keypoint i+1.
    ``start`` is where the character spawns; it is not part of the route.
    """
    expected = max(len(strategy) - 1, 0)
    if len(lps) != expected:
        raise ConfigError(f"expected {expected} local parameter sets, got {len(lps)}", "local_params")
    if not world.contains(start):
        raise ConfigError(f"start {tuple(start)} is outside the map", "start")

    route: list[RoutePoint] = []
    serial = 0
    for i, step in enumerate(strategy):
        route.append(RoutePoint("keypoint", step.keypoint_id, step.location))
        if i + 1 < len(strategy):
            forward = unit_toward(step.location, strategy[i + 1].location)
            for p in sample_waypoints(step.location, forward, lps[i], world, rng):
                serial += 1
                route.append(RoutePoint("waypoint", serial, p))
    return tuple(route)
