"""
Running scenes
==============

A scene walks the character along a route frame by frame.  It passes when
every point is reached, fails when the character stops moving (blocked by a
wall or caught in a trap), and times out when the frame limit runs out first.
"""

from gamefuzz import AxisAlignedBox, Coordinate, RoutePoint, SimConfig, StuckRegion, WorldMap, execute_scene

world = WorldMap(
    100, 100,
    obstacles=[AxisAlignedBox((70, 40), (72, 60))],
    stuck_regions=[StuckRegion(1, AxisAlignedBox((30, 70), (34, 74)))],
)
start = world.center
cfg = SimConfig()  # 0.1 units per frame, stuck after 120 frames within 0.01 units


def route(*points):
    return tuple(RoutePoint("waypoint", i + 1, Coordinate(*p)) for i, p in enumerate(points))


cases = {
    "open ground": route((50, 20), (20, 20)),
    "through the wall": route((90, 50)),
    "into the trap": route((32, 72), (10, 90)),
    "too far for the limit": route((5, 5), (95, 95), (5, 95)),
}
for name, r in cases.items():
    limit = SimConfig(timeout_frames=1_500) if name == "too far for the limit" else cfg
    out = execute_scene(r, world, limit, start)
    where = "" if out.failure_coord is None else f" at ({out.failure_coord.x:.1f}, {out.failure_coord.z:.1f})"
    region = "" if out.failure_region_id is None else f", stuck region {out.failure_region_id}"
    print(f"{name:22s} {out.verdict.value:8s} {out.frames_used:6d} frames{where}{region}")
