#!/usr/bin/env python3
"""Edge-insertion experiment: withhold a fraction of edges, insert them one
at a time and run the cycle query q(v', v, k-1) after each insertion,
reporting tail response latency.

Thin wrapper over `kpaths dynamic` so the experiment is reproducible from
a single script invocation.
"""
import argparse
import sys

from kpaths.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graph")
    ap.add_argument("--fraction", type=float, default=0.1)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    return cli_main([
        "dynamic", args.graph,
        "--fraction", str(args.fraction),
        "--k", str(args.k),
        "--seed", str(args.seed),
    ])


if __name__ == "__main__":
    sys.exit(main())
