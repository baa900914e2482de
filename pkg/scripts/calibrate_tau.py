#!/usr/bin/env python3
"""Empirically pick the search-space threshold for a graph.

Samples random queries, compares the cost of one full plan optimization
against the time DFS needs to reach each power-of-ten result count, and
prints the smallest count where optimizing first wins for most queries.
"""
import argparse
import sys

from kpaths import calibrate_tau
from kpaths.cli import load_graph


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graph")
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = load_graph(args.graph)
    tau = calibrate_tau(g, sample_count=args.samples, seed=args.seed,
                        hop_limit=args.k)
    print(f"tau = {tau:g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
