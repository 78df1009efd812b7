"""
Comparing play styles
=====================

Runs the sparse and thorough play styles on the desk scenario and looks at
how many scenes each gets through, how many distinct failures each finds, and
how much the two sets overlap.  Pass a frame budget on the command line to
change the run length (default 200,000 frames per campaign).
"""

import sys
from pathlib import Path

from gamefuzz import dedupe_failures, load_scenario, load_style, run_campaign

ROOT = Path(__file__).resolve().parents[1] / "scenarios"
budget = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
world, sim = load_scenario(ROOT / "desk_200.json")
styles = [load_style(ROOT / "styles" / f"{name}.json") for name in ("sparse", "thorough")]

found = {s.name: set() for s in styles}
for seed in range(1, 4):
    line = [f"seed {seed}:"]
    for style in styles:
        report = run_campaign(world, style, sim, budget, seed)
        failures = dedupe_failures(report.scenes)
        found[style.name] |= failures
        curve = report.cumulative_detected()
        line.append(f"{style.name} {len(report.scenes)} scenes / {len(failures)} failures "
                    f"({curve[-1]} stuck regions)")
    print("  ".join(line))

# %%
# Failures found by only one style are the argument for running both.
a, b = (found[s.name] for s in styles)
print(f"common {len(a & b)}, only sparse {len(a - b)}, only thorough {len(b - a)}, union {len(a | b)}")
