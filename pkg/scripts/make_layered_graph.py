#!/usr/bin/env python3
"""Emit a layered synthetic graph as an edge list.

s fans out into `depth` fully connected layers of `width` vertices and
back into t, giving width**depth hop-bounded s-t paths at k = depth + 1.
Useful for streaming/throughput experiments.
"""
import argparse
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--width", type=int, default=16)
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--output", default=None)
    args = ap.parse_args()

    layers = [[0]]
    nxt = 1
    for _ in range(args.depth):
        layers.append(list(range(nxt, nxt + args.width)))
        nxt += args.width
    layers.append([nxt])

    out = open(args.output, "w") if args.output else sys.stdout
    try:
        out.write(f"# layered graph width={args.width} depth={args.depth}; "
                  f"source=0 target={nxt} paths={args.width ** args.depth}\n")
        for a, b in zip(layers, layers[1:]):
            for u in a:
                for v in b:
                    out.write(f"{u} {v}\n")
    finally:
        if args.output:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
