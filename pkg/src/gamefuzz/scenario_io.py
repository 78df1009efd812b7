"""Scenario and play-style files, and campaign report output.

Scenario files are JSON::

    {
      "schema_version": 1,
      "description": "...",
      "map": {
        "width": 200, "height": 200,
        "keypoints": [{"id": 1, "x": 40, "z": 60}, ...],
        "obstacles": [{"min": [x, z], "max": [x, z]}, ...],
        "stuck_regions": [{"id": 1, "min": [x, z], "max": [x, z]}, ...]
      },
      "sim": {"speed": 0.1, "arrival_radius": 0.5, "stuck_epsilon": 0.01,
              "stuck_window": 120, "timeout_frames": 18000, "frame_rate": 60}
    }

Missing ``sim`` fields take the :class:`SimConfig` defaults.  Unknown fields
anywhere are rejected.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

from .campaign import CampaignReport, SceneRecord
from .errors import ConfigError, InvariantError, ParseError, ReportIOError, SchemaError
from .playstyle import PlayStyle
from .simulator import SimConfig
from .world import AxisAlignedBox, Coordinate, Keypoint, StuckRegion, WorldMap

SCHEMA_VERSION = 1

_TOP_FIELDS = {"schema_version", "description", "map", "sim"}
_MAP_FIELDS = {"width", "height", "keypoints", "obstacles", "stuck_regions"}
_SIM_FIELDS = {f.name for f in dataclasses.fields(SimConfig)}


def _read_json(path: str | os.PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot read file: {exc.strerror or exc}", str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(path)) from exc


def _expect_object(value: Any, path: str, allowed: set[str], required: set[str] = frozenset()) -> Mapping:
    if not isinstance(value, Mapping):
        raise SchemaError("expected an object", path)
    unknown = set(value) - allowed
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}", path)
    missing = set(required) - set(value)
    if missing:
        raise SchemaError(f"missing fields {sorted(missing)}", path)
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"expected a number, got {value!r}", path)
    if not math.isfinite(value):
        raise InvariantError(f"must be finite, got {value!r}", path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", path)
    return value


def _point(value: Any, path: str) -> Coordinate:
    if not isinstance(value, list) or len(value) != 2:
        raise SchemaError("expected [x, z]", path)
    return Coordinate(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def _box(value: Mapping, path: str) -> AxisAlignedBox:
    lo, hi = _point(value["min"], f"{path}.min"), _point(value["max"], f"{path}.max")
    try:
        return AxisAlignedBox(lo, hi)
    except InvariantError as exc:
        raise InvariantError(exc.message, path) from None


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError("expected a list", path)
    return value


def scenario_from_dict(data: Any) -> tuple[WorldMap, SimConfig, str]:
    top = _expect_object(data, "", _TOP_FIELDS, {"schema_version", "map"})
    version = _integer(top["schema_version"], "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version}; expected {SCHEMA_VERSION}", "schema_version")
    description = top.get("description", "")
    if not isinstance(description, str):
        raise SchemaError("expected a string", "description")

    m = _expect_object(top["map"], "map", _MAP_FIELDS, {"width", "height", "keypoints"})
    keypoints = []
    for i, raw in enumerate(_list(m["keypoints"], "map.keypoints")):
        p = f"map.keypoints[{i}]"
        kp = _expect_object(raw, p, {"id", "x", "z"}, {"id", "x", "z"})
        keypoints.append(Keypoint(_integer(kp["id"], f"{p}.id"),
                                  Coordinate(_number(kp["x"], f"{p}.location.x"), _number(kp["z"], f"{p}.location.z"))))
    obstacles = []
    for i, raw in enumerate(_list(m.get("obstacles", []), "map.obstacles")):
        p = f"map.obstacles[{i}]"
        obstacles.append(_box(_expect_object(raw, p, {"min", "max"}, {"min", "max"}), p))
    regions = []
    for i, raw in enumerate(_list(m.get("stuck_regions", []), "map.stuck_regions")):
        p = f"map.stuck_regions[{i}]"
        reg = _expect_object(raw, p, {"id", "min", "max"}, {"id", "min", "max"})
        regions.append(StuckRegion(_integer(reg["id"], f"{p}.id"), _box(reg, p)))
    world = WorldMap(_number(m["width"], "map.width"), _number(m["height"], "map.height"),
                     tuple(keypoints), tuple(obstacles), tuple(regions))

    raw_sim = _expect_object(top.get("sim", {}), "sim", _SIM_FIELDS)
    for name, value in raw_sim.items():
        _number(value, f"sim.{name}")
    sim = SimConfig(**raw_sim)
    return world, sim, description


def scenario_to_dict(world: WorldMap, sim: SimConfig, description: str = "") -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "description": description,
        "map": {
            "width": world.width,
            "height": world.height,
            "keypoints": [{"id": kp.id, "x": kp.location.x, "z": kp.location.z} for kp in world.keypoints],
            "obstacles": [{"min": list(b.min), "max": list(b.max)} for b in world.obstacles],
            "stuck_regions": [{"id": r.id, "min": list(r.box.min), "max": list(r.box.max)}
                              for r in world.stuck_regions],
        },
        "sim": dataclasses.asdict(sim),
    }


def load_scenario(path: str | os.PathLike) -> tuple[WorldMap, SimConfig]:
    world, sim, _ = scenario_from_dict(_read_json(path))
    return world, sim


def save_scenario(path: str | os.PathLike, world: WorldMap, sim: SimConfig, description: str = "") -> Path:
    return _write_text(Path(path), json.dumps(scenario_to_dict(world, sim, description), indent=2) + "\n")


def load_style(path: str | os.PathLike) -> PlayStyle:
    data = _read_json(path)
    if not isinstance(data, Mapping):
        raise SchemaError("expected an object", "style")
    try:
        return PlayStyle.from_dict(data)
    except ConfigError as exc:
        if isinstance(exc, (SchemaError, InvariantError)):
            raise
        raise SchemaError(exc.message, exc.path) from None


def save_style(path: str | os.PathLike, style: PlayStyle) -> Path:
    return _write_text(Path(path), json.dumps(style.to_dict(), indent=2) + "\n")


def failure_log_entry(rec: SceneRecord) -> dict[str, Any]:
    out = rec.outcome
    return {
        "t": rec.t,
        "verdict": out.verdict.value,
        "failure_coord": None if out.failure_coord is None else list(out.failure_coord),
        "failure_region_id": out.failure_region_id,
        "frames_used": out.frames_used,
        "fuzz_kind": rec.fuzz_kind.value,
        "strategy": list(rec.strategy.ids),
    }


def summary_dict(report: CampaignReport) -> dict[str, Any]:
    return {
        "scenario_id": report.scenario_id,
        "style": report.style_name,
        "seed": report.seed,
        "frame_budget": report.frame_budget,
        "scenes": len(report.scenes),
        "total_frames": report.total_frames,
        "verdict_counts": report.verdict_counts,
        "detected_region_ids": sorted(report.detected_region_ids),
        "metadata": {"generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds")},
    }


def _write_text(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write file: {exc.strerror or exc}", str(path)) from exc
    return path


def write_report(report: CampaignReport, out_dir: str | os.PathLike) -> dict[str, Path]:
    """Write events.jsonl, summary.json and scenes.csv under ``out_dir``."""
    out = Path(out_dir)
    events = "".join(json.dumps(failure_log_entry(rec)) + "\n" for rec in report.scenes)

    rows = [["t", "fuzz_kind", "verdict", "frames_used", "cumulative_detected"]]
    for rec, cum in zip(report.scenes, report.cumulative_detected()):
        rows.append([rec.t, rec.fuzz_kind.value, rec.outcome.verdict.value, rec.outcome.frames_used, cum])
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)

    return {
        "events": _write_text(out / "events.jsonl", events),
        "summary": _write_text(out / "summary.json", json.dumps(summary_dict(report), indent=2) + "\n"),
        "scenes": _write_text(out / "scenes.csv", buf.getvalue()),
    }


def read_events(path: str | os.PathLike) -> list[dict[str, Any]]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ReportIOError(f"cannot read file: {exc.strerror or exc}", str(path)) from exc
    return [json.loads(line) for line in lines if line.strip()]
