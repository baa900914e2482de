"""Cost-based strategy selection.

A cheap closed-form estimate of the DFS search space decides whether the
exact walk-count dynamic program is worth running at all; when it is, the
DP yields a cut position and the DFS-vs-join cost comparison.
"""
from __future__ import annotations

import json
import logging
import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .baseline import U64_MAX, sat_add
from .graph import Graph, Query
from .index import LightweightIndex, build_index, lookup_backward, lookup_forward
from .sinks import CountingSink
from . import enumerators

log = logging.getLogger(__name__)

DEFAULT_TAU = 1e5


@dataclass
class CountTable:
    """Exact per-level walk counts on the padded chain-join model.

    ``suffix[i][v]`` counts walk tuples from v at level i to the target
    at level k; ``prefix[i][v]`` counts tuples from the source to v at
    level i.  Counters saturate at 2**64 - 1.
    """

    hop_limit: int
    suffix: list[dict[int, int]]
    prefix: list[dict[int, int]]
    saturated: bool = False

    def suffix_sum(self, i: int) -> int:
        return sum(self.suffix[i].values())

    def prefix_sum(self, i: int) -> int:
        return sum(self.prefix[i].values())

    def total_walks(self) -> int:
        return self.suffix_sum(0)


@dataclass
class Plan:
    """Chosen evaluation strategy plus the decision trace behind it."""

    strategy: str  # "dfs" or "join"
    cut: Optional[int] = None
    t_hat: float = 0.0
    tau: float = DEFAULT_TAU
    t_dfs: Optional[int] = None
    t_join: Optional[int] = None
    used_full_estimator: bool = False
    prefix_sums: list[int] = field(default_factory=list)
    suffix_sums: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "cut": self.cut,
            "t_hat": self.t_hat,
            "tau": self.tau,
            "t_dfs": self.t_dfs,
            "t_join": self.t_join,
            "used_full_estimator": self.used_full_estimator,
            "prefix_sums": self.prefix_sums,
            "suffix_sums": self.suffix_sums,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def preliminary_estimate(idx: LightweightIndex, hop_limit: Optional[int] = None) -> float:
    """Closed-form search-space size: sum over levels of the product of
    average budgeted fanouts collected at index build.  An empty level
    truncates the sum (nothing can cross it)."""
    k = hop_limit if hop_limit is not None else idx.hop_limit
    total = 0.0
    product = 1.0
    for j in range(k):
        gamma = idx.level_stats[j]
        if gamma is None:
            break
        product *= gamma
        total += product
    return total


def full_estimate(idx: LightweightIndex, q: Optional[Query] = None) -> CountTable:
    """Exact walk-count DP over the index, both directions.

    The forward pass descends levels with budget k - i - 1; the backward
    pass ascends with budget i - 1, mirroring it.  Level sums feed cut
    selection and the strategy cost comparison.
    """
    k = idx.hop_limit
    saturated = False

    suffix: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    suffix[k] = {v: 1 for v in idx.levels[k]}
    for i in range(k - 1, -1, -1):
        nxt = suffix[i + 1]
        level = suffix[i]
        budget = k - i - 1
        for v in idx.levels[i]:
            total = 0
            for v2 in lookup_forward(idx, v, budget):
                total = sat_add(total, nxt.get(v2, 0))
            level[v] = total
            if total == U64_MAX:
                saturated = True

    prefix: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    prefix[0] = {v: 1 for v in idx.levels[0]}
    for i in range(1, k + 1):
        prev = prefix[i - 1]
        level = prefix[i]
        budget = i - 1
        for v in idx.levels[i]:
            total = 0
            for v2 in lookup_backward(idx, v, budget):
                total = sat_add(total, prev.get(v2, 0))
            level[v] = total
            if total == U64_MAX:
                saturated = True

    return CountTable(k, suffix, prefix, saturated)


def choose_cut(counts: CountTable) -> int:
    """Cut position minimizing prefix-side plus suffix-side tuple counts,
    restricted to the interior levels; ties break toward the midpoint,
    then toward the smaller level."""
    k = counts.hop_limit
    mid = math.ceil(k / 2)
    best = None
    for i in range(1, k):
        cost = counts.prefix_sum(i) + counts.suffix_sum(i)
        key = (cost, abs(i - mid), i)
        if best is None or key < best[0]:
            best = (key, i)
    return best[1]


def select_plan(
    idx: LightweightIndex, q: Optional[Query] = None, tau: float = DEFAULT_TAU
) -> Plan:
    """Pick DFS or join: run the exact estimator only when the
    preliminary estimate exceeds ``tau``; DFS wins ties."""
    t_hat = preliminary_estimate(idx)
    if t_hat <= tau:
        return Plan(strategy="dfs", t_hat=t_hat, tau=tau)
    counts = full_estimate(idx)
    cut = choose_cut(counts)
    k = counts.hop_limit
    prefix_sums = [counts.prefix_sum(i) for i in range(k + 1)]
    suffix_sums = [counts.suffix_sum(i) for i in range(k + 1)]
    t_dfs = sum(prefix_sums[1:])
    t_join = suffix_sums[0] + sum(prefix_sums[1 : cut + 1]) + sum(suffix_sums[cut:])
    strategy = "dfs" if t_dfs <= t_join else "join"
    return Plan(
        strategy=strategy,
        cut=cut if strategy == "join" else None,
        t_hat=t_hat,
        tau=tau,
        t_dfs=t_dfs,
        t_join=t_join,
        used_full_estimator=True,
        prefix_sums=prefix_sums,
        suffix_sums=suffix_sums,
    )


def calibrate_tau(
    g: Graph,
    sample_count: int = 100,
    seed: int = 0,
    hop_limit: int = 6,
    max_power: int = 5,
    majority: float = 0.9,
) -> float:
    """Pick the estimate threshold empirically: the smallest power of ten
    R such that, for at least ``majority`` of sampled queries, one plan
    optimization costs less time than finding R results with DFS.  Falls
    back to the default when sampling is inconclusive."""
    if sample_count <= 0:
        return DEFAULT_TAU
    rng = random.Random(seed)
    n = g.vertex_count
    opt_times: list[float] = []
    milestones: list[dict[int, float]] = []
    productive = 0
    for _ in range(sample_count):
        s = rng.randrange(n)
        t = rng.randrange(n)
        if s == t:
            continue
        q = Query(s, t, hop_limit)
        idx = build_index(g, q)
        t0 = time.perf_counter()
        counts = full_estimate(idx)
        choose_cut(counts)
        opt_time = time.perf_counter() - t0

        reached: dict[int, float] = {}
        start = time.perf_counter()
        target_counts = [10**p for p in range(1, max_power + 1)]

        class _MilestoneSink:
            def __init__(self):
                self.count = 0

            def __call__(self, path):
                self.count += 1
                if self.count in target_counts:
                    reached[self.count] = time.perf_counter() - start
                return self.count < target_counts[-1]

        sink = _MilestoneSink()
        enumerators.dfs_enumerate(idx, q, sink)
        if sink.count > 0:
            productive += 1
            opt_times.append(opt_time)
            milestones.append(reached)
    if productive == 0:
        log.warning("tau calibration: all sampled queries had zero results; using default")
        return DEFAULT_TAU
    for p in range(1, max_power + 1):
        target = 10**p
        wins = sum(
            1
            for opt, reached in zip(opt_times, milestones)
            if target in reached and opt < reached[target]
        )
        if wins / productive >= majority:
            return float(target)
    return DEFAULT_TAU
