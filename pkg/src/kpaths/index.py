"""Per-query lightweight index: level partitions plus distance-bucketed
neighbor lists with O(1) budgeted lookups.

A vertex is indexed when dist(s, v) + dist(v, t) <= k, where dist(s, .)
is computed with the target excluded as an intermediate and dist(., t)
with the source excluded.  A real edge (v, v') is indexed when
dist(s, v) + dist(v', t) + 1 <= k, with two deliberate carve-outs that
restore the simple-walk shape the enumerators rely on: the source never
appears as a neighbor target, and the target's only outgoing entry is the
(t, t) padding self-edge.  The backward structure indexes exactly the
same edge set keyed by edge target, with the padding self-edge bucketed
at distance 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Optional

from .graph import Graph, Query, UNREACHABLE, bfs_distances


class _NeighborStore:
    """Concatenated neighbor array with per-vertex cumulative bucket
    boundaries; a dense directory gives O(1) vertex-to-block access."""

    __slots__ = ("hop_limit", "neighbors", "bounds", "block_of")

    def __init__(self, vertex_count: int, hop_limit: int):
        self.hop_limit = hop_limit
        self.neighbors: list[int] = []
        self.bounds: list[int] = []  # (k + 2) ints per block: begin + k+1 bucket ends
        self.block_of = [-1] * vertex_count

    def add_block(self, v: int, bucketed: list[list[int]]) -> None:
        k = self.hop_limit
        self.block_of[v] = len(self.bounds)
        begin = len(self.neighbors)
        self.bounds.append(begin)
        for d in range(k + 1):
            self.neighbors.extend(bucketed[d])
            self.bounds.append(len(self.neighbors))

    def lookup(self, v: int, budget: int) -> list[int]:
        if budget < 0 or not 0 <= v < len(self.block_of):
            return []
        base = self.block_of[v]
        if base < 0:
            return []
        end = self.bounds[base + 1 + min(budget, self.hop_limit)]
        return self.neighbors[self.bounds[base]:end]

    def block_size(self, v: int) -> int:
        base = self.block_of[v]
        if base < 0:
            return 0
        return self.bounds[base + 1 + self.hop_limit] - self.bounds[base]


@dataclass
class LightweightIndex:
    source: int
    target: int
    hop_limit: int
    vertex_count: int
    dist_from_s: list[int]
    dist_to_t: list[int]
    levels: list[list[int]]
    forward: _NeighborStore
    backward: _NeighborStore
    level_stats: list[Optional[float]] = field(default_factory=list)

    def is_indexed(self, v: int) -> bool:
        ds, dt = self.dist_from_s[v], self.dist_to_t[v]
        return ds != UNREACHABLE and dt != UNREACHABLE and ds + dt <= self.hop_limit

    def edge_total(self) -> int:
        return len(self.forward.neighbors)


def build_index(g: Graph, q: Query, edge_filter=None) -> LightweightIndex:
    """Two BFS passes, level-partition fill and counting-sort neighbor
    bucketing.  ``edge_filter`` (or the query's predicate constraint)
    restricts both traversal and bucketing to passing edges."""
    if edge_filter is None and q.constraints is not None:
        edge_filter = getattr(q.constraints, "edge_predicate", None)
    k, s, t = q.hop_limit, q.source, q.target
    n = g.vertex_count
    vs = bfs_distances(g, s, "forward", excluded=t, edge_filter=edge_filter).dist
    vt = bfs_distances(g, t, "reverse", excluded=s, edge_filter=edge_filter).dist

    indexed = [
        v
        for v in range(n)
        if vs[v] != UNREACHABLE and vt[v] != UNREACHABLE and vs[v] + vt[v] <= k
    ]
    index_flag = bytearray(n)
    for v in indexed:
        index_flag[v] = 1

    levels = [
        [v for v in indexed if vs[v] <= i and vt[v] <= k - i] for i in range(k + 1)
    ]

    fwd = _NeighborStore(n, k)
    for v in indexed:
        if v == t:
            fwd.add_block(t, [[t]] + [[] for _ in range(k)])
            continue
        buckets: list[list[int]] = [[] for _ in range(k + 1)]
        base = vs[v] + 1
        for v2 in g.forward[v]:
            d = vt[v2]
            if v2 == s or d == UNREACHABLE or base + d > k:
                continue
            if edge_filter is not None and not edge_filter(v, v2):
                continue
            buckets[d].append(v2)
        fwd.add_block(v, buckets)

    bwd = _NeighborStore(n, k)
    for v in indexed:
        buckets = [[] for _ in range(k + 1)]
        if v == t:
            buckets[0].append(t)  # padding self-edge, bucketed at 0
        if v != s:
            for v2 in g.reverse[v]:
                d = vs[v2]
                if (
                    v2 == t
                    or not index_flag[v2]
                    or d == UNREACHABLE
                    or d + vt[v] + 1 > k
                ):
                    continue
                if edge_filter is not None and not edge_filter(v2, v):
                    continue
                buckets[d].append(v2)
        bwd.add_block(v, buckets)

    idx = LightweightIndex(s, t, k, n, vs, vt, levels, fwd, bwd)
    idx.level_stats = _collect_level_stats(idx)
    return idx


def _collect_level_stats(idx: LightweightIndex) -> list[Optional[float]]:
    """Average budgeted out-fanout per level, feeding the preliminary
    search-space estimate."""
    k = idx.hop_limit
    stats: list[Optional[float]] = []
    for j in range(k):
        level = idx.levels[j]
        if not level:
            stats.append(None)
            continue
        total = sum(len(lookup_forward(idx, v, k - j - 1)) for v in level)
        stats.append(total / len(level))
    return stats


def lookup_level(idx: LightweightIndex, i: int) -> list[int]:
    """Vertices eligible for position ``i`` of any result path."""
    if not 0 <= i <= idx.hop_limit:
        raise ValueError(f"level {i} outside [0, {idx.hop_limit}]")
    return idx.levels[i]


def lookup_forward(idx: LightweightIndex, v: int, budget: int) -> list[int]:
    """Out-neighbors of ``v`` within ``budget`` hops of the target, in
    ascending distance-to-target order."""
    return idx.forward.lookup(v, budget)


def lookup_backward(idx: LightweightIndex, v: int, budget: int) -> list[int]:
    """In-neighbors of ``v`` within ``budget`` hops of the source, in
    ascending distance-from-source order."""
    return idx.backward.lookup(v, budget)


def dump_index(idx: LightweightIndex, stream: IO) -> None:
    """Debug dump for golden-file tests: one line per indexed vertex with
    its two distances and bucketed forward neighbor list (internal ids)."""
    k = idx.hop_limit
    for v in range(idx.vertex_count):
        if not idx.is_indexed(v):
            continue
        nbrs = lookup_forward(idx, v, k)
        stream.write(
            f"{v} s={idx.dist_from_s[v]} t={idx.dist_to_t[v]} "
            f"nbrs=[{' '.join(str(u) for u in nbrs)}]\n"
        )
