"""Command-line entry point.

    gamefuzz run --scenario s.json --style a.json --frames 600000 --seed 1 --out out/
    gamefuzz compare --scenario s.json --style a.json --style b.json --seed 1 --seed 2 --out out/
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from statistics import mean
from typing import Sequence

from .campaign import compare_identities, dedupe_failures, run_campaign
from .errors import ConfigError, FuzzError, ReportIOError
from .scenario_io import load_scenario, load_style, write_report


@dataclass(frozen=True)
class RunSpec:
    scenario: Path
    styles: tuple[Path, ...]
    frame_budget: int
    seeds: tuple[int, ...]
    out_dir: Path
    parallel: int = 1
    bucket: float = 1.0

    def __post_init__(self) -> None:
        if self.frame_budget < 1:
            raise ConfigError(f"must be at least 1, got {self.frame_budget}", "--frames")
        if not self.seeds:
            raise ConfigError("at least one seed is required", "--seed")
        if self.parallel < 1:
            raise ConfigError(f"must be at least 1, got {self.parallel}", "--parallel")
        if not self.bucket > 0:
            raise ConfigError(f"must be positive, got {self.bucket}", "--bucket")


def _campaign_job(scenario: Path, style_path: Path, frames: int, seed: int, out_dir: Path, bucket: float):
    world, sim = load_scenario(scenario)
    style = load_style(style_path)
    report = run_campaign(world, style, sim, frames, seed, scenario_id=scenario.stem)
    write_report(report, out_dir)
    return len(report.scenes), dedupe_failures(report.scenes, bucket)


def _run_jobs(jobs: list[tuple], parallel: int) -> list:
    if parallel == 1 or len(jobs) == 1:
        return [_campaign_job(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(_campaign_job, *zip(*jobs)))


def _preflight(spec: RunSpec) -> None:
    # surface configuration errors before any worker starts
    world, _ = load_scenario(spec.scenario)
    for path in spec.styles:
        load_style(path).priority_distribution(world.n_keypoints)


def cmd_run(spec: RunSpec) -> int:
    if len(spec.styles) != 1:
        raise ConfigError(f"run takes exactly one style, got {len(spec.styles)}", "--style")
    _preflight(spec)
    jobs = [(spec.scenario, spec.styles[0], spec.frame_budget, seed, spec.out_dir / f"seed-{seed}", spec.bucket)
            for seed in spec.seeds]
    for seed, (scenes, found) in zip(spec.seeds, _run_jobs(jobs, spec.parallel)):
        print(f"seed {seed}: {scenes} scenes, {len(found)} distinct failures -> {spec.out_dir / f'seed-{seed}'}")
    return 0


def cmd_compare(spec: RunSpec) -> int:
    if len(spec.styles) != 2:
        raise ConfigError(f"compare takes exactly two styles, got {len(spec.styles)}", "--style")
    _preflight(spec)
    names = [load_style(p).name for p in spec.styles]
    jobs = [(spec.scenario, style, spec.frame_budget, seed, spec.out_dir / label / f"seed-{seed}", spec.bucket)
            for seed in spec.seeds for label, style in zip(("style-a", "style-b"), spec.styles)]
    results = _run_jobs(jobs, spec.parallel)

    per_seed = []
    all_a: set = set()
    all_b: set = set()
    for i, seed in enumerate(spec.seeds):
        (scenes_a, found_a), (scenes_b, found_b) = results[2 * i], results[2 * i + 1]
        all_a |= found_a
        all_b |= found_b
        sets = compare_identities(found_a, found_b)
        per_seed.append({
            "seed": seed,
            "scenes": {"a": scenes_a, "b": scenes_b},
            "detected": {"a": len(found_a), "b": len(found_b)},
            "common": sets["common"],
            "unique_a": sets["unique_a"],
            "unique_b": sets["unique_b"],
            "union_size": len(sets["union"]),
        })
    sets = compare_identities(all_a, all_b)
    doc = {
        "scenario": spec.scenario.stem,
        "frame_budget": spec.frame_budget,
        "bucket": spec.bucket,
        "styles": {"a": names[0], "b": names[1]},
        "per_seed": per_seed,
        "aggregate": {
            "mean_scenes": {k: mean(s["scenes"][k] for s in per_seed) for k in ("a", "b")},
            "mean_detected": {k: mean(s["detected"][k] for s in per_seed) for k in ("a", "b")},
            "detected": {"a": len(all_a), "b": len(all_b)},
            "common": sets["common"],
            "unique_a": sets["unique_a"],
            "unique_b": sets["unique_b"],
            "union_size": len(sets["union"]),
        },
    }
    path = spec.out_dir / "compare.json"
    try:
        spec.out_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ReportIOError(f"cannot write file: {exc.strerror or exc}", str(path)) from exc
    agg = doc["aggregate"]
    print(f"{names[0]}: {agg['detected']['a']} failures, {names[1]}: {agg['detected']['b']} failures, "
          f"common {len(agg['common'])}, union {agg['union_size']} -> {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gamefuzz", description="Two-stage waypoint fuzzing of a 2D game world.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("run", "run one play style over one or more seeds"),
                            ("compare", "run two play styles over the same seeds and compare failures")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", required=True, type=Path)
        p.add_argument("--style", required=True, action="append", type=Path, dest="styles")
        p.add_argument("--frames", required=True, type=int, help="frame budget per campaign")
        p.add_argument("--seed", required=True, action="append", type=int, dest="seeds")
        p.add_argument("--out", required=True, type=Path)
        p.add_argument("--parallel", type=int, default=1)
        p.add_argument("--bucket", type=float, default=1.0, help="grid cell size for deduplicating failures")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = RunSpec(args.scenario, tuple(args.styles), args.frames, tuple(args.seeds), args.out,
                       args.parallel, args.bucket)
        if args.command == "run":
            return cmd_run(spec)
        return cmd_compare(spec)
    except FuzzError as exc:
        print(f"gamefuzz: {exc.kind} error: {exc}", file=sys.stderr)
        return 1 if isinstance(exc, ReportIOError) else 2


if __name__ == "__main__":
    sys.exit(main())
