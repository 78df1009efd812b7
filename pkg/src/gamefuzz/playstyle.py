"""Play styles: weighted distributions over the fuzzing parameters.

A play style fixes how likely each keypoint is to be visited, how priorities
are spread, and how many waypoints go where.  Each fuzzing iteration resamples
fresh parameters from the style.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping, NamedTuple

import numpy as np

from .errors import ConfigError

MAX_LOCAL_VALUE = 99
_NORM_TOL = 1e-9
_TWO_POW_M53 = 2.0**-53


class GlobalParams(NamedTuple):
    """Per-keypoint parameters: visit flag and priority (higher goes first)."""

    passed: bool
    priority: int


class LocalParams(NamedTuple):
    """Per-segment parameters for waypoint insertion."""

    waypoint_count: int
    distance_pct: int
    quadrant: int


class RngStream:
    """Counter-based random stream keyed by ``(seed, label)``.

    Draw ``i`` is the top 53 bits of ``blake2b(i, key=(seed, label))`` scaled
    to [0, 1), so a value depends only on the seed, the label and its draw
    index.  Differently labelled streams never share draws.
    """

    __slots__ = ("seed", "label", "counter", "_hasher")

    def __init__(self, seed: int, label: str = "root") -> None:
        if isinstance(seed, bool) or not 0 <= int(seed) < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}", "seed")
        self.seed = int(seed)
        self.label = label
        self.counter = 0
        key = hashlib.blake2b(f"{self.seed}:{label}".encode(), digest_size=32).digest()
        self._hasher = hashlib.blake2b(digest_size=8, key=key)

    def spawn(self, label: str) -> RngStream:
        return RngStream(self.seed, f"{self.label}/{label}")

    def at(self, index: int) -> float:
        """The value of draw ``index``, without advancing the stream."""
        h = self._hasher.copy()
        h.update(index.to_bytes(8, "little"))
        return (int.from_bytes(h.digest(), "little") >> 11) * _TWO_POW_M53

    def uniform(self, size: int | None = None):
        """Next draw as a float, or the next ``size`` draws as an array."""
        if size is None:
            self.counter += 1
            return self.at(self.counter - 1)
        start = self.counter
        self.counter += size
        return np.fromiter((self.at(i) for i in range(start, start + size)), dtype=np.float64, count=size)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, label={self.label!r}, counter={self.counter})"


@dataclass(frozen=True)
class Categorical:
    """Finite distribution over integer values."""

    values: tuple[int, ...]
    probs: tuple[float, ...]
    _cdf: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        object.__setattr__(self, "_cdf", cdf)

    @classmethod
    def from_weights(cls, weights: Mapping[int, float], path: str = "") -> Categorical:
        if not weights:
            raise ConfigError("distribution is empty", path)
        items = sorted((int(v), float(w)) for v, w in weights.items())
        for value, w in items:
            if not math.isfinite(w) or w < 0:
                raise ConfigError(f"weight for {value} must be a non-negative number, got {w}", path)
        total = sum(w for _, w in items)
        if total <= 0:
            raise ConfigError("weights sum to zero", path)
        items = [(v, w) for v, w in items if w > 0]
        return cls(tuple(v for v, _ in items), tuple(w / total for _, w in items))

    @classmethod
    def uniform(cls, lo: int, hi: int) -> Categorical:
        n = hi - lo + 1
        return cls(tuple(range(lo, hi + 1)), (1.0 / n,) * n)

    def restrict(self, lo: int, hi: int, path: str = "") -> Categorical:
        kept = {v: p for v, p in zip(self.values, self.probs) if lo <= v <= hi}
        if not kept:
            raise ConfigError(f"no weight left on values {lo}..{hi}", path)
        return Categorical.from_weights(kept, path)

    def sample(self, rng: RngStream, size: int) -> np.ndarray:
        idx = np.searchsorted(self._cdf, rng.uniform(size), side="right")
        return np.asarray(self.values, dtype=np.int64)[idx]

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.values, self.probs))


def _weights_from_json(raw: Any, path: str, lo: int, hi: int) -> Categorical:
    if raw == "uniform":
        return Categorical.uniform(lo, hi)
    if isinstance(raw, list):
        raw = dict(enumerate(raw, start=lo))
    if not isinstance(raw, Mapping):
        raise ConfigError('expected "uniform" or an object mapping values to weights', path)
    parsed: dict[int, float] = {}
    for key, w in raw.items():
        try:
            value = int(key)
        except (TypeError, ValueError):
            raise ConfigError(f"value {key!r} is not an integer", path) from None
        if not lo <= value <= hi:
            raise ConfigError(f"value {value} outside {lo}..{hi}", path)
        if isinstance(w, bool) or not isinstance(w, (int, float)):
            raise ConfigError(f"weight for {value} is not a number", path)
        parsed[value] = float(w)
    return Categorical.from_weights(parsed, path)


@dataclass(frozen=True)
class PlayStyle:
    name: str
    pass_probability: float
    priority_weights: Categorical | None  # None means uniform over 0..n
    waypoint_count_weights: Categorical
    distance_pct_weights: Categorical
    quadrant_weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)

    def __post_init__(self) -> None:
        p = self.pass_probability
        if isinstance(p, bool) or not (isinstance(p, (int, float)) and 0.0 <= p <= 1.0):
            raise ConfigError(f"must be within [0, 1], got {p!r}", "pass_probability")
        for name in ("waypoint_count_weights", "distance_pct_weights"):
            dist = getattr(self, name)
            if min(dist.values) < 0 or max(dist.values) > MAX_LOCAL_VALUE:
                raise ConfigError(f"values must lie in 0..{MAX_LOCAL_VALUE}", name)
        qw = tuple(float(w) for w in self.quadrant_weights)
        if len(qw) != 4 or any(not math.isfinite(w) or w < 0 for w in qw):
            raise ConfigError("expected four non-negative weights", "quadrant_weights")
        if abs(sum(qw) - 1.0) > _NORM_TOL:
            raise ConfigError(f"weights must sum to 1, got {sum(qw)}", "quadrant_weights")
        object.__setattr__(self, "quadrant_weights", qw)

    @cached_property
    def quadrant_distribution(self) -> Categorical:
        return Categorical.from_weights(dict(zip(range(1, 5), self.quadrant_weights)))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> PlayStyle:
        known = {"name", "pass_probability", "priority_weights", "waypoint_count_weights",
                 "distance_pct_weights", "quadrant_weights"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown fields {sorted(unknown)}", "style")
        missing = known - set(data) - {"priority_weights", "quadrant_weights"}
        if missing:
            raise ConfigError(f"missing fields {sorted(missing)}", "style")
        if not isinstance(data["name"], str):
            raise ConfigError("must be a string", "name")
        raw_priority = data.get("priority_weights", "uniform")
        # the keypoint count is unknown here; the cap is applied when sampling
        priority = None if raw_priority == "uniform" else _weights_from_json(
            raw_priority, "priority_weights", 0, 2**31)
        return cls(
            name=data["name"],
            pass_probability=data["pass_probability"],
            priority_weights=priority,
            waypoint_count_weights=_weights_from_json(
                data["waypoint_count_weights"], "waypoint_count_weights", 0, MAX_LOCAL_VALUE),
            distance_pct_weights=_weights_from_json(
                data["distance_pct_weights"], "distance_pct_weights", 0, MAX_LOCAL_VALUE),
            quadrant_weights=tuple(data.get("quadrant_weights", (0.25,) * 4)),
        )

    def to_dict(self) -> dict[str, Any]:
        def enc(dist: Categorical) -> dict[str, float]:
            return {str(v): p for v, p in dist.as_dict().items()}

        return {
            "name": self.name,
            "pass_probability": self.pass_probability,
            "priority_weights": "uniform" if self.priority_weights is None else enc(self.priority_weights),
            "waypoint_count_weights": enc(self.waypoint_count_weights),
            "distance_pct_weights": enc(self.distance_pct_weights),
            "quadrant_weights": list(self.quadrant_weights),
        }

    def priority_distribution(self, n: int) -> Categorical:
        if self.priority_weights is None:
            return Categorical.uniform(0, n)
        return self.priority_weights.restrict(0, n, "priority_weights")


def sample_global(style: PlayStyle, n: int, rng: RngStream) -> list[GlobalParams]:
    """Draw one ``GlobalParams`` per keypoint."""
    if n < 1:
        raise ConfigError(f"keypoint count must be at least 1, got {n}", "n")
    passed = rng.uniform(n) < style.pass_probability
    priority = style.priority_distribution(n).sample(rng, n)
    return [GlobalParams(bool(a), int(b)) for a, b in zip(passed, priority)]


def sample_local(style: PlayStyle, segment_count: int, rng: RngStream) -> list[LocalParams]:
    """Draw one ``LocalParams`` per route segment; fields are independent."""
    if segment_count < 0:
        raise ConfigError(f"segment count must be non-negative, got {segment_count}", "segment_count")
    if segment_count == 0:
        return []
    counts = style.waypoint_count_weights.sample(rng, segment_count)
    dists = style.distance_pct_weights.sample(rng, segment_count)
    quads = style.quadrant_distribution.sample(rng, segment_count)
    return [LocalParams(int(c), int(d), int(e)) for c, d, e in zip(counts, dists, quads)]
