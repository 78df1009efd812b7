"""
Building the desk-scale scenario
================================

Lays out a 200 x 200 map with five keypoints, fifteen obstacles and thirty
indexed stuck regions, then writes it (and the two reference play styles) to
``scenarios/``.  Placement is seeded so the file is reproducible.
"""

import json
from pathlib import Path

import numpy as np

from gamefuzz import AxisAlignedBox, Coordinate, SimConfig, StuckRegion, WorldMap, point_in_box
from gamefuzz.playstyle import PlayStyle
from gamefuzz.scenario_io import save_scenario

ROOT = Path(__file__).resolve().parents[1] / "scenarios"
SIZE = 200.0
KEYPOINTS = [(45.0, 50.0), (155.0, 40.0), (165.0, 150.0), (60.0, 160.0), (110.0, 185.0)]

rng = np.random.default_rng(20240611)
center = Coordinate(SIZE / 2, SIZE / 2)


def clear_of_specials(box, margin):
    grown = AxisAlignedBox((box.min.x - margin, box.min.z - margin), (box.max.x + margin, box.max.z + margin))
    return not any(point_in_box(grown, p) for p in [center, *map(Coordinate._make, KEYPOINTS)])


def overlaps(a, b, gap=2.0):
    return not (a.max.x + gap < b.min.x or b.max.x + gap < a.min.x or a.max.z + gap < b.min.z or b.max.z + gap < a.min.z)


def place(count, size_range, margin, taken):
    boxes = []
    while len(boxes) < count:
        w, h = rng.uniform(*size_range, size=2)
        x, z = rng.uniform(5.0, SIZE - 5.0 - w), rng.uniform(5.0, SIZE - 5.0 - h)
        box = AxisAlignedBox((round(x, 1), round(z, 1)), (round(x + w, 1), round(z + h, 1)))
        if clear_of_specials(box, margin) and not any(overlaps(box, other) for other in taken + boxes):
            boxes.append(box)
    return boxes


# %%
# Obstacles are walls and crates; stuck regions are small traps such as
# holes in the terrain.  Both keep clear of keypoints and the spawn point.
obstacles = place(15, (4.0, 14.0), 4.0, [])
traps = place(30, (2.0, 5.0), 3.0, obstacles)
world = WorldMap(
    SIZE, SIZE,
    keypoints=[(i + 1, Coordinate(*p)) for i, p in enumerate(KEYPOINTS)],
    obstacles=obstacles,
    stuck_regions=[StuckRegion(i + 1, box) for i, box in enumerate(traps)],
)
print(f"{len(world.obstacles)} obstacles, {len(world.stuck_regions)} stuck regions")
save_scenario(ROOT / "desk_200.json", world, SimConfig(),
              "200x200 desk scenario: 5 keypoints, 15 obstacles, 30 indexed stuck regions")

# %%
# The sparse style visits about half of the keypoints with few waypoints; the
# thorough style visits all of them and inserts many waypoints per segment.
distance = {str(d): 1 for d in range(10, 91)}
styles = {
    "sparse": {"pass_probability": 0.5, "waypoint_count_weights": {str(c): 1 for c in range(0, 3)}},
    "thorough": {"pass_probability": 1.0, "waypoint_count_weights": {str(c): 1 for c in range(3, 9)}},
}
for name, fields in styles.items():
    doc = {"name": name, **fields, "priority_weights": "uniform", "distance_pct_weights": distance,
           "quadrant_weights": [0.25, 0.25, 0.25, 0.25]}
    PlayStyle.from_dict(doc)
    (ROOT / "styles" / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
