"""Benchmark workload generation.

Vertices are split into a high-degree pool (top 10% by degree, descending)
and the rest; a workload setting places the source and target in either
pool.  Generated pairs are distinct and within a small forward distance of
each other so queries are non-trivial.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, Query, UNREACHABLE

# setting codes: 'h' = high-degree pool, 'l' = the rest; first char is the
# source pool, second the target pool
SETTINGS = ("hh", "hl", "lh", "ll")


@dataclass
class WorkloadSpec:
    setting: str = "hh"
    query_count: int = 100
    hop_limit: int = 6
    seed: int = 0
    max_distance: int = 3
    degree_mode: str = "out"  # "out", "in" or "total"

    def __post_init__(self):
        if self.setting not in SETTINGS:
            raise ValueError(f"setting must be one of {SETTINGS}")
        if self.degree_mode not in ("out", "in", "total"):
            raise ValueError("degree_mode must be 'out', 'in' or 'total'")


def degree_pools(g: Graph, mode: str = "out") -> tuple[list[int], list[int]]:
    """(high, rest) vertex pools; high is the top 10% by degree."""
    def deg(v: int) -> int:
        if mode == "out":
            return len(g.forward[v])
        if mode == "in":
            return len(g.reverse[v])
        return len(g.forward[v]) + len(g.reverse[v])

    ranked = sorted(range(g.vertex_count), key=lambda v: (-deg(v), v))
    split = max(1, g.vertex_count // 10)
    return ranked[:split], ranked[split:]


def bounded_distance(g: Graph, s: int, t: int, limit: int) -> int:
    """Forward hop distance from s to t, or UNREACHABLE if above limit."""
    if s == t:
        return 0
    dist = {s: 0}
    frontier = [s]
    for d in range(1, limit + 1):
        nxt = []
        for u in frontier:
            for v in g.forward[u]:
                if v not in dist:
                    dist[v] = d
                    if v == t:
                        return d
                    nxt.append(v)
        frontier = nxt
    return UNREACHABLE


def generate_workload(g: Graph, spec: WorkloadSpec, max_attempts: int = 200_000) -> list[Query]:
    """Sample queries matching ``spec``; deterministic given its seed."""
    high, rest = degree_pools(g, spec.degree_mode)
    pools = {"h": high, "l": rest if rest else high}
    src_pool = pools[spec.setting[0]]
    dst_pool = pools[spec.setting[1]]
    if len(src_pool) == 1 and src_pool == dst_pool:
        raise ValueError(
            f"setting {spec.setting!r} draws both endpoints from a single-vertex pool"
        )
    rng = random.Random(spec.seed)
    queries: list[Query] = []
    attempts = 0
    while len(queries) < spec.query_count:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError(
                f"could not generate {spec.query_count} queries after {attempts} attempts"
            )
        s = rng.choice(src_pool)
        t = rng.choice(dst_pool)
        if s == t:
            continue
        if bounded_distance(g, s, t, spec.max_distance) == UNREACHABLE:
            continue
        queries.append(Query(s, t, spec.hop_limit))
    return queries
