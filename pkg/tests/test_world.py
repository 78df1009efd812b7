import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gamefuzz import AxisAlignedBox, Coordinate, InvariantError, StuckRegion, WorldMap
from gamefuzz.world import min_edge_distance, point_in_box, quadrant_contains


def quadrant_by_angle(origin, forward, p):
    """Independent oracle: rotate the offset into the forward frame via angles."""
    dx, dz = p[0] - origin[0], p[1] - origin[1]
    rel = math.atan2(dz, dx) - math.atan2(forward[1], forward[0])
    along, across = math.cos(rel), -math.sin(rel)  # right is clockwise from forward
    return {q for q, (sa, sc) in {1: (1, 1), 2: (1, -1), 3: (-1, -1), 4: (-1, 1)}.items()
            if along * sa >= -1e-12 and across * sc >= -1e-12}


@pytest.mark.parametrize("size, p, expected", [
    ((100, 100), (30, 40), 30),
    ((100, 100), (50, 50), 50),
    ((80, 20), (10, 5), 5),
])
def test_min_edge_distance(size, p, expected):
    assert min_edge_distance(WorldMap(*size), Coordinate(*p)) == expected


@pytest.mark.parametrize("p", [(0, 50), (100, 50), (-1, 5), (50, 101)])
def test_min_edge_distance_rejects_points_outside(p):
    with pytest.raises(ValueError):
        min_edge_distance(WorldMap(100, 100), Coordinate(*p))


@given(st.floats(1, 500), st.floats(1, 500), st.floats(0.001, 0.999), st.floats(0.001, 0.999))
def test_min_edge_distance_bounds(w, h, fx, fz):
    d = min_edge_distance(WorldMap(w, h), Coordinate(w * fx, h * fz))
    assert 0 < d <= min(w, h) / 2 + 1e-9


def test_quadrant_examples():
    north = Coordinate(0, 1)
    assert quadrant_contains(Coordinate(0, 0), north, 1, Coordinate(3, 4))
    assert quadrant_contains(Coordinate(0, 0), north, 1, Coordinate(0, 0))
    assert quadrant_contains(Coordinate(0, 0), north, 3, Coordinate(-1, -1))
    assert quadrant_by_angle((0, 0), north, (-1, -1)) == {3}
    assert not quadrant_contains(Coordinate(0, 0), north, 1, Coordinate(-3, 4))
    assert quadrant_contains(Coordinate(0, 0), north, 2, Coordinate(-3, 4))
    assert quadrant_contains(Coordinate(0, 0), north, 4, Coordinate(3, -4))


def test_quadrant_follows_forward_direction():
    east = Coordinate(1, 0)
    # facing east, right is south
    assert quadrant_contains(Coordinate(5, 5), east, 1, Coordinate(8, 2))
    assert quadrant_contains(Coordinate(5, 5), east, 2, Coordinate(8, 8))


angles = st.floats(0, 2 * math.pi)
offsets = st.tuples(st.floats(-100, 100), st.floats(-100, 100)).filter(lambda d: math.hypot(*d) > 1e-3)


@given(angles, offsets)
def test_quadrants_cover_plane(theta, d):
    forward = Coordinate(math.cos(theta), math.sin(theta))
    hits = [q for q in range(1, 5) if quadrant_contains(Coordinate(0, 0), forward, q, Coordinate(*d))]
    assert 1 <= len(hits) <= 2


@given(angles, offsets, st.floats(0.01, 100))
def test_quadrant_scale_invariant(theta, d, k):
    forward = Coordinate(math.cos(theta), math.sin(theta))
    for q in range(1, 5):
        assert quadrant_contains((0, 0), forward, q, d) == quadrant_contains((0, 0), forward, q, (d[0] * k, d[1] * k))


@given(angles, offsets)
def test_quadrant_matches_angle_oracle(theta, d):
    forward = Coordinate(math.cos(theta), math.sin(theta))
    got = {q for q in range(1, 5) if quadrant_contains((0, 0), forward, q, d)}
    expected = quadrant_by_angle((0, 0), forward, d)
    # both agree away from the sector boundaries
    if len(expected) == 1:
        assert got == expected


@pytest.mark.parametrize("p, inside", [((1, 1), True), ((2, 2), True), ((3, 0), False), ((0, 0), True)])
def test_point_in_box(p, inside):
    assert point_in_box(AxisAlignedBox((0, 0), (2, 2)), Coordinate(*p)) is inside


def test_box_requires_ordered_corners():
    with pytest.raises(InvariantError):
        AxisAlignedBox((2, 0), (1, 1))


class TestWorldMapInvariants:
    def test_keypoint_outside_map(self):
        with pytest.raises(InvariantError) as err:
            WorldMap(100, 100, keypoints=[(1, (200, 5))])
        assert "keypoints[0].location" in err.value.path

    def test_keypoint_on_edge_is_outside(self):
        with pytest.raises(InvariantError):
            WorldMap(100, 100, keypoints=[(1, (0, 5))])

    def test_keypoint_ids_must_be_sequential(self):
        with pytest.raises(InvariantError):
            WorldMap(100, 100, keypoints=[(2, (5, 5))])

    def test_keypoint_inside_obstacle(self):
        with pytest.raises(InvariantError):
            WorldMap(100, 100, keypoints=[(1, (5, 5))], obstacles=[AxisAlignedBox((4, 4), (6, 6))])

    def test_keypoint_inside_stuck_region(self):
        with pytest.raises(InvariantError):
            WorldMap(100, 100, keypoints=[(1, (5, 5))], stuck_regions=[StuckRegion(1, AxisAlignedBox((4, 4), (6, 6)))])

    def test_duplicate_region_ids(self):
        box = AxisAlignedBox((4, 4), (6, 6))
        with pytest.raises(InvariantError, match="duplicate stuck region id 3"):
            WorldMap(100, 100, stuck_regions=[StuckRegion(3, box), StuckRegion(3, box)])

    def test_bad_dimensions(self):
        with pytest.raises(InvariantError):
            WorldMap(0, 10)

    def test_region_lookup(self, trap_world):
        assert trap_world.region_at(Coordinate(42, 42)) == 7
        assert trap_world.region_at(Coordinate(10, 10)) is None
        assert trap_world.center == Coordinate(50, 50)
