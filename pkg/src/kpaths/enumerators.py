"""Index-based enumeration: streaming depth-first search and the
materializing cut-and-join strategy, plus the constrained DFS variants.

Both strategies emit exactly the hop-bounded simple s-t paths; the DFS is
streaming (the sink sees each result the moment it completes) while the
join materializes both sides before probing.  Emission order is
deterministic given the sorted index but not guaranteed stable across
versions.
"""
from __future__ import annotations

from typing import Optional

from .constraints import Automaton, ConstraintBundle
from .graph import Query
from .index import LightweightIndex, lookup_forward


class JoinMemoryError(RuntimeError):
    """Materialized join sides exceeded the configured tuple budget."""


def dfs_enumerate(
    idx: LightweightIndex, q: Query, sink, stats: Optional[dict] = None
) -> int:
    """Stream all hop-bounded simple s-t paths off the index.

    Per-step neighbor access is a single budgeted lookup; the membership
    check uses a per-vertex flag array.  Returns the number of emitted
    paths (possibly partial if the sink stopped early).
    """
    k, t = q.hop_limit, q.target
    stack = [q.source]
    on_path = bytearray(idx.vertex_count)
    on_path[q.source] = 1
    emitted = 0
    if stats is not None:
        stats.setdefault("expansions", 0)

    def search() -> bool:
        nonlocal emitted
        v = stack[-1]
        if v == t:
            emitted += 1
            return sink(tuple(stack))
        for v2 in lookup_forward(idx, v, k - len(stack)):
            if on_path[v2]:
                continue
            if stats is not None:
                stats["expansions"] += 1
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


def dfs_enumerate_relaxed(
    idx: LightweightIndex, q: Query, sink, stats: Optional[dict] = None
) -> int:
    """As :func:`dfs_enumerate` minus the membership check: emits every
    hop-bounded s-t walk.  Test/analysis surface."""
    k, t = q.hop_limit, q.target
    stack = [q.source]
    emitted = 0
    if stats is not None:
        stats.setdefault("expansions", 0)

    def search() -> bool:
        nonlocal emitted
        v = stack[-1]
        if v == t:
            emitted += 1
            return sink(tuple(stack))
        for v2 in lookup_forward(idx, v, k - len(stack)):
            if stats is not None:
                stats["expansions"] += 1
            stack.append(v2)
            keep_going = search()
            stack.pop()
            if not keep_going:
                return False
        return True

    search()
    return emitted


def constrained_dfs_enumerate(idx: LightweightIndex, q: Query, sink) -> int:
    """DFS restricted by the query's constraint bundle.

    Predicate constraints must already be baked into the index (they are
    applied during the index-build BFS); this function enforces the
    accumulator at emission and the automaton eagerly on null transitions.
    Side tables are checked for full edge coverage before the search
    starts.
    """
    bundle: ConstraintBundle = q.constraints or ConstraintBundle()
    k, t = q.hop_limit, q.target
    acc = bundle.accumulator
    auto = bundle.automaton
    if acc is not None or auto is not None:
        bundle.validate_coverage(_indexed_edges(idx))

    stack = [q.source]
    on_path = bytearray(idx.vertex_count)
    on_path[q.source] = 1
    emitted = 0

    def search(beta, state) -> bool:
        nonlocal emitted
        v = stack[-1]
        if v == t:
            if acc is not None and not acc.accept(beta):
                return True
            if auto is not None and state not in auto.accepting:
                return True
            emitted += 1
            return sink(tuple(stack))
        for v2 in lookup_forward(idx, v, k - len(stack)):
            if on_path[v2]:
                continue
            beta2, state2 = beta, state
            if acc is not None:
                beta2 = acc.combine(beta, acc.edge_values[(v, v2)])
                if acc.prune is not None and acc.prune(beta2):
                    continue
            if auto is not None:
                state2 = auto.step(state, auto.edge_labels[(v, v2)])
                if state2 is None:
                    continue
            stack.append(v2)
            on_path[v2] = 1
            keep_going = search(beta2, state2)
            stack.pop()
            on_path[v2] = 0
            if not keep_going:
                return False
        return True

    search(
        acc.identity if acc is not None else None,
        auto.start if auto is not None else None,
    )
    return emitted


def _indexed_edges(idx: LightweightIndex):
    """Real edges present in the index (padding excluded)."""
    t = idx.target
    for v in range(idx.vertex_count):
        if v == t or not idx.is_indexed(v):
            continue
        for v2 in lookup_forward(idx, v, idx.hop_limit):
            yield (v, v2)


def join_enumerate(
    idx: LightweightIndex,
    q: Query,
    cut: int,
    sink,
    max_tuples: int = 5_000_000,
) -> int:
    """Cut the query at position ``cut``, materialize prefix and suffix
    walk tuples with budgeted searches, hash-join on the cut vertex and
    validate paths tuple-pairwise during the probe.

    Tuples shorter than their side's arity are padded with the target via
    its self-entry in the index, so all rows have fixed arity.  Raises
    :class:`JoinMemoryError` when the materialized sides exceed
    ``max_tuples``; the sink's stop signal is honored during the probe
    only.
    """
    k, t = q.hop_limit, q.target
    if not 1 <= cut <= k - 1:
        raise ValueError(f"cut {cut} outside [1, {k - 1}]")

    def collect(start: int, offset: int, arity: int, out: list) -> None:
        stack = [start]

        def search():
            if len(stack) == arity:
                out.append(tuple(stack))
                if len(out) > max_tuples:
                    raise JoinMemoryError(
                        f"join side exceeded {max_tuples} tuples at cut {cut}"
                    )
                return
            v = stack[-1]
            for v2 in lookup_forward(idx, v, k - offset - len(stack)):
                stack.append(v2)
                search()
                stack.pop()

        search()

    prefixes: list[tuple[int, ...]] = []
    if idx.is_indexed(q.source):
        collect(q.source, 0, cut + 1, prefixes)
    if not prefixes:
        return 0

    by_key: dict[int, list[tuple[int, ...]]] = {}
    for r in prefixes:
        by_key.setdefault(r[-1], []).append(r)

    suffixes: list[tuple[int, ...]] = []
    for v in sorted(by_key):
        collect(v, cut, k - cut + 1, suffixes)

    emitted = 0
    for rb in suffixes:
        for ra in by_key.get(rb[0], ()):
            r = ra + rb[1:]
            first_t = r.index(t) if t in r else -1
            if first_t < 0:
                continue
            path = r[: first_t + 1]
            if len(set(path)) != len(path):
                continue
            emitted += 1
            if not sink(path):
                return emitted
    return emitted
