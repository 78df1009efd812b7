"""
From parameters to a route
==========================

Walks through one fuzzing iteration by hand: per-keypoint parameters pick and
order the keypoints, then per-segment parameters scatter waypoints between
consecutive keypoints.
"""

from gamefuzz import (
    GlobalParams,
    LocalParams,
    RngStream,
    WorldMap,
    build_route,
    determine_strategy,
    waypoint_region,
)
from gamefuzz.local_fuzz import unit_toward
from gamefuzz.world import QUADRANT_NAMES

world = WorldMap(100, 100, keypoints=[(1, (25, 30)), (2, (70, 20)), (3, (60, 70))])

# %%
# Keypoints 1 and 3 are flagged for visiting; keypoint 3 has the higher
# priority, so it comes first.  Keypoint 2 is skipped.
params = [GlobalParams(True, 0), GlobalParams(False, 0), GlobalParams(True, 1)]
strategy = determine_strategy(params, world)
print("strategy:", strategy.ids)

# %%
# One segment (3 -> 1) needs one set of local parameters: one waypoint, at
# most 50% of the distance from keypoint 3 to the nearest map edge, in the
# front-right quarter relative to the direction of travel.
lp = LocalParams(waypoint_count=1, distance_pct=50, quadrant=1)
k3, k1 = strategy.locations
sector = waypoint_region(k3, unit_toward(k3, k1), lp, world)
print(f"waypoint region: radius {sector.radius:.1f}, {QUADRANT_NAMES[sector.quadrant]} of keypoint 3")

route = build_route(strategy, [lp], world.center, world, RngStream(seed=1, label="demo"))
for point in route:
    print(f"  {point.kind:8s} {point.id}  ({point.location.x:6.2f}, {point.location.z:6.2f})")

# %%
# Larger counts and other quadrants spread more waypoints around.
for quadrant in range(1, 5):
    lp = LocalParams(4, 80, quadrant)
    route = build_route(strategy, [lp], world.center, world, RngStream(seed=quadrant))
    pts = [f"({p.location.x:.0f},{p.location.z:.0f})" for p in route if p.kind == "waypoint"]
    print(f"{QUADRANT_NAMES[quadrant]:11s}", " ".join(pts))
