#!/usr/bin/env python3
"""Run the four workload settings over a hop-limit sweep and write one CSV
report per (setting, k) combination plus a combined summary.

Example:
    python scripts/run_benchmark.py graph.el --out-dir reports --count 50
"""
import argparse
import json
import os
import sys

from kpaths.cli import main as cli_main
from kpaths.workload import SETTINGS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graph")
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--k-min", type=int, default=3)
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tau", type=float, default=1e5)
    args = ap.parse_args()

    os.makedirs(args.out_dir, exist_ok=True)
    summary = []
    for setting in SETTINGS:
        for k in range(args.k_min, args.k_max + 1):
            out = os.path.join(args.out_dir, f"bench_{setting}_k{k}.csv")
            code = cli_main([
                "bench", args.graph,
                "--setting", setting,
                "--count", str(args.count),
                "--k", str(k),
                "--seed", str(args.seed),
                "--tau", str(args.tau),
                "--output", out,
            ])
            if code != 0:
                print(f"skipping {setting} k={k} (exit {code})", file=sys.stderr)
                continue
            with open(out + ".json") as fh:
                sidecar = json.load(fh)
            sidecar["setting"] = setting
            sidecar["k"] = k
            summary.append(sidecar)

    with open(os.path.join(args.out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    print(f"wrote {len(summary)} reports under {args.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
