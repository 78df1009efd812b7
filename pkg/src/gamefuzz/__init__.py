"""Two-stage (strategy + waypoint) fuzzing of a deterministic 2D open-world game."""

from .campaign import (
    CampaignReport,
    FuzzKind,
    SceneRecord,
    dedupe_failures,
    next_fuzz_kind,
    run_campaign,
)
from .errors import ConfigError, FuzzError, InvariantError, ParseError, ReportIOError, SchemaError
from .global_fuzz import Strategy, determine_strategy
from .local_fuzz import RoutePoint, Sector, build_route, sample_waypoints, waypoint_region
from .playstyle import GlobalParams, LocalParams, PlayStyle, RngStream, sample_global, sample_local
from .scenario_io import load_scenario, load_style, save_scenario, write_report
from .simulator import CharacterState, SceneOutcome, SimConfig, Verdict, execute_scene, step_frame
from .world import AxisAlignedBox, Coordinate, Keypoint, StuckRegion, WorldMap, min_edge_distance, \
    point_in_box, quadrant_contains

__version__ = "0.1.0"
