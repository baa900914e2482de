"""Reference enumerators and counting oracles.

Everything here is deliberately simple: these functions define ground
truth for the index-based engine and are kept in the library so users can
cross-check results on their own data.  Result sets are returned as sets
of vertex-id tuples; emission order is unspecified.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, Query, UNREACHABLE, bfs_distances

U64_MAX = 2**64 - 1


def sat_add(a: int, b: int) -> int:
    """Unsigned-64 saturating addition; real walk counts reach 1e10+."""
    c = a + b
    return c if c <= U64_MAX else U64_MAX


def is_saturated(count: int) -> bool:
    return count >= U64_MAX


class ResultCapExceeded(RuntimeError):
    """An oracle produced more results than its configured cap."""


@dataclass
class Relation:
    """Binary relation for one level of the chain-join formulation of a
    query: ordered (v, v') pairs, plus the (t, t) padding pair for levels
    above the first."""

    level: int
    tuples: set[tuple[int, int]] = field(default_factory=set)

    def heads(self) -> set[int]:
        return {v for v, _ in self.tuples}

    def tails(self) -> set[int]:
        return {v2 for _, v2 in self.tuples}

    def neighbors_of(self, v: int) -> set[int]:
        return {v2 for v1, v2 in self.tuples if v1 == v}


def generic_dfs_enumerate(g: Graph, q: Query, sink) -> int:
    """Backtracking enumeration pruned by reverse-BFS distances to the
    target; emits every hop-bounded simple path exactly once."""
    k, s, t = q.hop_limit, q.source, q.target
    dist_to_t = bfs_distances(g, t, "reverse").dist
    if dist_to_t[s] == UNREACHABLE:
        return 0
    stack = [s]
    on_path = bytearray(g.vertex_count)
    on_path[s] = 1
    emitted = 0

    def search() -> bool:
        nonlocal emitted
        v = stack[-1]
        if v == t:
            emitted += 1
            return sink(tuple(stack))
        budget = k - (len(stack) - 1)
        for v2 in g.forward[v]:
            b = dist_to_t[v2]
            if on_path[v2] or b == UNREACHABLE or 1 + b > budget:
                continue
            stack.append(v2)
            on_path[v2] = 1
            keep_going = search()
            stack.pop()
            on_path[v2] = 0
            if not keep_going:
                return False
        return True

    search()
    return emitted


def naive_enumerate(g: Graph, q: Query, cap: int | None = None) -> set[tuple[int, ...]]:
    """Exhaustive backtracking with no distance pruning: the primary
    ground-truth oracle.  Only for small instances; raises
    :class:`ResultCapExceeded` past ``cap`` results."""
    k, s, t = q.hop_limit, q.source, q.target
    results: set[tuple[int, ...]] = set()
    stack = [s]
    seen = {s}

    def search():
        v = stack[-1]
        if v == t:
            results.add(tuple(stack))
            if cap is not None and len(results) > cap:
                raise ResultCapExceeded(f"more than {cap} paths")
            return
        if len(stack) - 1 == k:
            return
        for v2 in g.forward[v]:
            if v2 in seen or v2 == s:
                continue
            stack.append(v2)
            seen.add(v2)
            search()
            stack.pop()
            seen.discard(v2)

    search()
    return results


def count_walks(g: Graph, q: Query) -> int:
    """Exact number of hop-bounded s-t walks (interior avoiding both
    endpoints) by dynamic programming over (vertex, remaining hops).
    Saturates at 2**64 - 1; check with :func:`is_saturated`."""
    k, s, t = q.hop_limit, q.source, q.target
    n = g.vertex_count
    # walks[v] = number of walks from v to t with <= r edges, v not in {s, t}
    walks = [0] * n
    for r in range(1, k):
        nxt = [0] * n
        for v in range(n):
            if v == s or v == t:
                continue
            total = 0
            for v2 in g.forward[v]:
                if v2 == t:
                    total = sat_add(total, 1)
                elif v2 != s:
                    total = sat_add(total, walks[v2])
            nxt[v] = total
        walks = nxt
    total = 0
    for v2 in g.forward[s]:
        if v2 == t:
            total = sat_add(total, 1)
        else:
            total = sat_add(total, walks[v2])
    return total


def build_relations(g: Graph, q: Query) -> list[Relation]:
    """Chain-join relations for the query, with dangling tuples removed
    by one forward and one backward semi-join sweep."""
    k, s, t = q.hop_limit, q.source, q.target
    rels = [Relation(i) for i in range(1, k + 1)]
    rels[0].tuples = {(s, v) for v in g.forward[s]}
    rels[k - 1].tuples = {(v, t) for v in g.reverse[t] if v != s} | {(t, t)}
    if k > 2:
        middle = {
            (v, v2)
            for v, v2 in g.edges()
            if v != s and v2 != s and v != t
        }
        for i in range(1, k - 1):
            rels[i].tuples = set(middle) | {(t, t)}
    # forward sweep: drop tuples whose head never appears as a tail upstream
    for i in range(k - 1):
        tails = rels[i].tails()
        rels[i + 1].tuples = {(v, v2) for v, v2 in rels[i + 1].tuples if v in tails}
    # backward sweep
    for i in range(k - 2, -1, -1):
        heads = rels[i + 1].heads()
        rels[i].tuples = {(v, v2) for v, v2 in rels[i].tuples if v2 in heads}
    return rels


def join_relations(relations: list[Relation], cap: int | None = None) -> list[tuple[int, ...]]:
    """Evaluate the chain join left-to-right, returning full fixed-arity
    tuples (padded with the target)."""
    if not relations or not relations[0].tuples:
        return []
    partials: list[tuple[int, ...]] = [(v, v2) for v, v2 in sorted(relations[0].tuples)]
    for rel in relations[1:]:
        by_head: dict[int, list[int]] = {}
        for v, v2 in sorted(rel.tuples):
            by_head.setdefault(v, []).append(v2)
        nxt = []
        for p in partials:
            for v2 in by_head.get(p[-1], ()):
                nxt.append(p + (v2,))
                if cap is not None and len(nxt) > cap:
                    raise ResultCapExceeded(f"more than {cap} join tuples")
        partials = nxt
        if not partials:
            break
    return partials


def eliminate_and_collect(
    relations: list[Relation], cap: int | None = None
) -> set[tuple[int, ...]]:
    """Second independent oracle: evaluate the chain join, truncate each
    tuple at the first occurrence of the target, and keep the tuples that
    form simple paths."""
    if not relations:
        return set()
    t = next(iter(relations[-1].tuples))[1] if relations[-1].tuples else None
    paths: set[tuple[int, ...]] = set()
    for r in join_relations(relations, cap=cap):
        cut = r.index(t) if t in r else len(r) - 1
        path = r[: cut + 1]
        if len(set(path)) == len(path):
            paths.add(path)
            if cap is not None and len(paths) > cap:
                raise ResultCapExceeded(f"more than {cap} paths")
    return paths
