"""The two-stage fuzzing loop.

Each iteration builds a route and runs it as one scene.  When the last two
verdicts agree, the next scene resamples both the keypoint strategy and the
waypoints; when they differ, the strategy is kept and only waypoints change.
The loop stops once the frame budget is spent.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .errors import ConfigError
from .global_fuzz import Strategy, determine_strategy
from .local_fuzz import Route, build_route
from .playstyle import GlobalParams, LocalParams, PlayStyle, RngStream, sample_global, sample_local
from .simulator import SceneOutcome, SimConfig, Verdict, execute_scene
from .world import Coordinate, WorldMap, point_in_box


class FuzzKind(str, enum.Enum):
    BOTH = "Both"
    LOCAL_ONLY = "LocalOnly"

    def __str__(self) -> str:
        return self.value


SceneExecutor = Callable[[Route, WorldMap, SimConfig, Coordinate], SceneOutcome]

# A failure identity is ("region", id) or ("cell", ix, iz).
FailureIdentity = Union[tuple[str, int], tuple[str, int, int]]


def next_fuzz_kind(prev: Verdict | None, curr: Verdict) -> FuzzKind:
    """Both stages when two consecutive verdicts agree (or there is no history)."""
    if prev is None or prev == curr:
        return FuzzKind.BOTH
    return FuzzKind.LOCAL_ONLY


def scheduled_kind(history: Sequence[Verdict]) -> FuzzKind:
    """Fuzz kind for the next scene, from the two most recent verdicts."""
    if not history:
        return FuzzKind.BOTH
    return next_fuzz_kind(history[-2] if len(history) >= 2 else None, history[-1])


@dataclass(frozen=True)
class SceneRecord:
    t: int
    fuzz_kind: FuzzKind
    global_params: tuple[GlobalParams, ...]
    local_params: tuple[LocalParams, ...]
    strategy: Strategy
    route: Route
    outcome: SceneOutcome


@dataclass
class CampaignReport:
    scenario_id: str
    style_name: str
    seed: int
    frame_budget: int
    scenes: list[SceneRecord] = field(default_factory=list)
    total_frames: int = 0
    detected_region_ids: set[int] = field(default_factory=set)

    @property
    def verdict_counts(self) -> dict[str, int]:
        counts = Counter(rec.outcome.verdict for rec in self.scenes)
        return {v.value: counts.get(v, 0) for v in Verdict}

    def cumulative_detected(self) -> list[int]:
        seen: set[int] = set()
        out = []
        for rec in self.scenes:
            if rec.outcome.failure_region_id is not None:
                seen.add(rec.outcome.failure_region_id)
            out.append(len(seen))
        return out


def _check_start(world: WorldMap, start: Coordinate) -> None:
    for i, box in enumerate(world.obstacles):
        if point_in_box(box, start):
            raise ConfigError(f"spawn point {tuple(start)} lies inside obstacle {i}", "map.obstacles")
    region = world.region_at(start)
    if region is not None:
        raise ConfigError(f"spawn point {tuple(start)} lies inside stuck region {region}", "map.stuck_regions")


def run_campaign(world: WorldMap, style: PlayStyle, cfg: SimConfig, frame_budget: int, seed: int, *,
                 scenario_id: str = "scenario", execute: SceneExecutor = execute_scene) -> CampaignReport:
    """Fuzz ``world`` until ``frame_budget`` simulated frames have been used.

    The budget is checked between scenes, so the final scene may overshoot by
    less than ``cfg.timeout_frames``.  ``execute`` can be swapped out to drive
    the loop with scripted outcomes.
    """
    if isinstance(frame_budget, bool) or int(frame_budget) != frame_budget or frame_budget < 1:
        raise ConfigError(f"must be a positive integer, got {frame_budget!r}", "frame_budget")
    if world.n_keypoints < 1:
        raise ConfigError("the map needs at least one keypoint", "map.keypoints")
    if style.pass_probability == 0:
        # every strategy would be empty and every scene would use zero frames
        raise ConfigError("a style that never visits a keypoint cannot consume the frame budget",
                          "pass_probability")
    start = world.center
    _check_start(world, start)
    style.priority_distribution(world.n_keypoints)

    root = RngStream(seed, "campaign")
    report = CampaignReport(scenario_id, style.name, int(seed), int(frame_budget))
    verdicts: list[Verdict] = []
    global_params: tuple[GlobalParams, ...] = ()
    strategy = Strategy()
    t = 0
    while report.total_frames < frame_budget:
        t += 1
        kind = scheduled_kind(verdicts)
        if kind is FuzzKind.BOTH:
            global_params = tuple(sample_global(style, world.n_keypoints, root.spawn(f"global/{t}")))
            strategy = determine_strategy(global_params, world)
        local_params = tuple(sample_local(style, max(len(strategy) - 1, 0), root.spawn(f"local/{t}")))
        route = build_route(strategy, local_params, start, world, root.spawn(f"waypoints/{t}"))
        outcome = execute(route, world, cfg, start)

        report.scenes.append(SceneRecord(t, kind, global_params, local_params, strategy, route, outcome))
        report.total_frames += outcome.frames_used
        if outcome.verdict is Verdict.FAIL and outcome.failure_region_id is not None:
            report.detected_region_ids.add(outcome.failure_region_id)
        verdicts.append(outcome.verdict)
    return report


def failure_identity(outcome: SceneOutcome, bucket: float) -> FailureIdentity | None:
    if outcome.verdict is not Verdict.FAIL:
        return None
    if outcome.failure_region_id is not None:
        return ("region", outcome.failure_region_id)
    x, z = outcome.failure_coord  # type: ignore[misc]
    return ("cell", math.floor(x / bucket), math.floor(z / bucket))


def dedupe_failures(scenes: Iterable[SceneRecord], bucket: float = 1.0) -> set[FailureIdentity]:
    """Distinct failures: by stuck-region id, else by ``bucket``-sized grid cell."""
    if not bucket > 0:
        raise ConfigError(f"bucket must be positive, got {bucket}", "bucket")
    found = set()
    for rec in scenes:
        ident = failure_identity(rec.outcome, bucket)
        if ident is not None:
            found.add(ident)
    return found


def format_identity(ident: FailureIdentity) -> str:
    return ":".join(str(part) for part in ident)


def compare_identities(a: set, b: set) -> dict[str, list[str]]:
    def fmt(items: Iterable) -> list[str]:
        return [format_identity(i) for i in sorted(items)]

    return {
        "common": fmt(a & b),
        "unique_a": fmt(a - b),
        "unique_b": fmt(b - a),
        "union": fmt(a | b),
    }
