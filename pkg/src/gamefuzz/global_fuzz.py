"""Strategy determination: which keypoints to visit and in what order."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import ConfigError
from .playstyle import GlobalParams
from .world import Coordinate, WorldMap


class StrategyStep(NamedTuple):
    keypoint_id: int
    location: Coordinate
    priority: int


class Strategy(tuple):
    """Ordered keypoints the character passes through."""

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(step.keypoint_id for step in self)

    @property
    def locations(self) -> tuple[Coordinate, ...]:
        return tuple(step.location for step in self)


def determine_strategy(params: Sequence[GlobalParams], world: WorldMap) -> Strategy:
    """Keep keypoints whose pass flag is set, highest priority first.

    Equal priorities are ordered by ascending keypoint id.
    """
    if len(params) != world.n_keypoints:
        raise ConfigError(
            f"got {len(params)} parameter sets for {world.n_keypoints} keypoints", "global_params")
    chosen = [
        StrategyStep(kp.id, kp.location, int(pg.priority))
        for kp, pg in zip(world.keypoints, params)
        if pg.passed
    ]
    chosen.sort(key=lambda step: (-step.priority, step.keypoint_id))
    return Strategy(chosen)
