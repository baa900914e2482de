"""Directed graph storage, edge-list I/O and hop-distance BFS.

Vertices are remapped to dense internal ids ``0..n-1`` at load time; the
original (external) ids are retained in ``Graph.external_ids`` so results
can be reported in the input's id space.  Adjacency lists are kept sorted
by neighbor id, which makes every downstream ordering deterministic.
"""
from __future__ import annotations

import struct
from bisect import insort
from dataclasses import dataclass
from typing import IO, Iterable, Optional

UNREACHABLE = -1

_SNAPSHOT_MAGIC = b"KPG1"


class GraphFormatError(ValueError):
    """Raised for malformed edge-list or snapshot input."""


@dataclass(frozen=True)
class Query:
    """An s-t enumeration request: all simple paths with at most
    ``hop_limit`` edges whose interior avoids both endpoints."""

    source: int
    target: int
    hop_limit: int
    constraints: Optional["object"] = None  # ConstraintBundle, if any

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("source and target must be distinct")
        if self.hop_limit < 2:
            raise ValueError("hop limit must be at least 2")


@dataclass
class DistanceMap:
    """Per-vertex hop distances from ``origin``; ``UNREACHABLE`` marks
    vertices with no connecting walk.  When ``excluded`` is set, the
    excluded vertex may receive a distance label but is never expanded,
    so every finite distance is realized by a walk whose interior avoids
    it."""

    dist: list[int]
    origin: int
    excluded: Optional[int] = None

    def __getitem__(self, v: int) -> int:
        return self.dist[v]


class Graph:
    """Immutable directed graph with forward and reverse adjacency.

    Self-loops and duplicate edges are dropped at ingest.  Safe for
    concurrent reads once constructed; the only sanctioned mutation is
    :meth:`append_edges`, used by the dynamic-insertion harness.
    """

    __slots__ = ("forward", "reverse", "external_ids", "_internal_of", "edge_count")

    def __init__(self, forward: list[list[int]], external_ids: Optional[list[int]] = None):
        n = len(forward)
        self.forward = forward
        self.reverse: list[list[int]] = [[] for _ in range(n)]
        for u, nbrs in enumerate(forward):
            for v in nbrs:
                self.reverse[v].append(u)
        for lst in self.reverse:
            lst.sort()
        self.external_ids = external_ids if external_ids is not None else list(range(n))
        self._internal_of = {ext: i for i, ext in enumerate(self.external_ids)}
        self.edge_count = sum(len(nbrs) for nbrs in forward)

    @property
    def vertex_count(self) -> int:
        return len(self.forward)

    def out_neighbors(self, v: int) -> list[int]:
        return self.forward[v]

    def in_neighbors(self, v: int) -> list[int]:
        return self.reverse[v]

    def out_degree(self, v: int) -> int:
        return len(self.forward[v])

    def internal_id(self, external: int) -> int:
        try:
            return self._internal_of[external]
        except KeyError:
            raise KeyError(f"unknown vertex id {external}") from None

    def edges(self) -> Iterable[tuple[int, int]]:
        for u, nbrs in enumerate(self.forward):
            for v in nbrs:
                yield u, v

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from (external) id pairs, deduplicating and
        dropping self-loops, with ids remapped to a dense range."""
        edge_set = {(u, v) for u, v in edges if u != v}
        if not edge_set:
            raise GraphFormatError("empty edge set")
        ids = sorted({u for u, _ in edge_set} | {v for _, v in edge_set})
        internal = {ext: i for i, ext in enumerate(ids)}
        forward: list[list[int]] = [[] for _ in ids]
        for u, v in edge_set:
            forward[internal[u]].append(internal[v])
        for lst in forward:
            lst.sort()
        return cls(forward, ids)

    def reversed_graph(self) -> "Graph":
        return Graph([list(nbrs) for nbrs in self.reverse], list(self.external_ids))

    def append_edges(self, edges: Iterable[tuple[int, int]]) -> None:
        """Batch-append edges given by external ids, creating vertices as
        needed.  Only intended for the dynamic-graph experiment."""
        for u_ext, v_ext in edges:
            if u_ext == v_ext:
                continue
            for ext in (u_ext, v_ext):
                if ext not in self._internal_of:
                    self._internal_of[ext] = len(self.external_ids)
                    self.external_ids.append(ext)
                    self.forward.append([])
                    self.reverse.append([])
            u = self._internal_of[u_ext]
            v = self._internal_of[v_ext]
            pos = self.forward[u]
            if v in pos:
                continue
            insort(pos, v)
            insort(self.reverse[v], u)
            self.edge_count += 1


def load_edge_list(stream: IO, directed: bool = True) -> Graph:
    """Parse a whitespace-separated "u v" edge list; '#' and '%' prefix
    comment lines.  Raises :class:`GraphFormatError` with the offending
    line number on malformed input or an empty edge set."""
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode() if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        edges.append((u, v))
        if not directed:
            edges.append((v, u))
    return Graph.from_edges(edges)


def bfs_distances(
    g: Graph,
    origin: int,
    direction: str = "forward",
    excluded: Optional[int] = None,
    edge_filter=None,
) -> DistanceMap:
    """Hop distances from ``origin`` along the chosen direction.

    The excluded vertex is labeled when first reached but never expanded,
    so finite distances are realized by walks whose interior avoids it.
    ``edge_filter(u, v)``, if given, restricts traversal to edges (in
    forward orientation) passing the predicate.
    """
    if not 0 <= origin < g.vertex_count:
        raise ValueError(f"origin {origin} out of range")
    if excluded == origin:
        raise ValueError("excluded vertex must differ from origin")
    if direction not in ("forward", "reverse"):
        raise ValueError(f"bad direction {direction!r}")
    adjacency = g.forward if direction == "forward" else g.reverse
    dist = [UNREACHABLE] * g.vertex_count
    dist[origin] = 0
    frontier = [origin]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in adjacency[u]:
                if dist[v] != UNREACHABLE:
                    continue
                if edge_filter is not None:
                    uv = (u, v) if direction == "forward" else (v, u)
                    if not edge_filter(*uv):
                        continue
                dist[v] = d
                if v != excluded:
                    nxt.append(v)
        frontier = nxt
    return DistanceMap(dist, origin, excluded)


def save_snapshot(g: Graph, stream: IO) -> None:
    """Binary snapshot of the dense-id graph.

    Layout (all integers little-endian uint64 unless noted):
      magic "KPG1" (4 bytes), vertex_count, edge_count,
      forward CSR offsets (vertex_count + 1 entries),
      forward CSR targets (edge_count entries),
      external ids (vertex_count entries, int64).
    """
    n = g.vertex_count
    stream.write(_SNAPSHOT_MAGIC)
    stream.write(struct.pack("<QQ", n, g.edge_count))
    offsets = [0]
    for nbrs in g.forward:
        offsets.append(offsets[-1] + len(nbrs))
    stream.write(struct.pack(f"<{n + 1}Q", *offsets))
    targets = [v for nbrs in g.forward for v in nbrs]
    if targets:
        stream.write(struct.pack(f"<{len(targets)}Q", *targets))
    stream.write(struct.pack(f"<{n}q", *g.external_ids))


def load_snapshot(stream: IO) -> Graph:
    magic = stream.read(4)
    if magic != _SNAPSHOT_MAGIC:
        raise GraphFormatError("bad snapshot magic")
    n, m = struct.unpack("<QQ", stream.read(16))
    offsets = struct.unpack(f"<{n + 1}Q", stream.read(8 * (n + 1)))
    targets = struct.unpack(f"<{m}Q", stream.read(8 * m)) if m else ()
    external = list(struct.unpack(f"<{n}q", stream.read(8 * n)))
    forward = [list(targets[offsets[i]:offsets[i + 1]]) for i in range(n)]
    return Graph(forward, external)
