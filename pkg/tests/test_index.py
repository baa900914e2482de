import io

import pytest
from hypothesis import given, settings

from kpaths import (
    Query,
    build_index,
    dump_index,
    lookup_backward,
    lookup_forward,
    lookup_level,
)
from conftest import graph_queries

Q_DIAMOND = Query(0, 3, 3)


def test_distances_with_exclusion(diamond):
    idx = build_index(diamond, Q_DIAMOND)
    assert idx.dist_from_s == [0, 1, 1, 2]
    # s gets a distance-to-t label (reached) but is never expanded
    assert idx.dist_to_t == [2, 1, 1, 0]


def test_levels_diamond(diamond):
    idx = build_index(diamond, Q_DIAMOND)
    assert lookup_level(idx, 0) == [0]
    assert lookup_level(idx, 1) == [0, 1, 2]
    assert lookup_level(idx, 2) == [1, 2, 3]
    assert lookup_level(idx, 3) == [3]
    with pytest.raises(ValueError):
        lookup_level(idx, 4)


def test_forward_lookup_diamond(diamond):
    idx = build_index(diamond, Q_DIAMOND)
    assert set(lookup_forward(idx, 0, 2)) == {1, 2}
    assert lookup_forward(idx, 1, 1) == [3, 2]  # ascending distance to t
    assert lookup_forward(idx, 1, 0) == [3]
    assert lookup_forward(idx, 3, 3) == [3]  # target's padding self-entry
    assert lookup_forward(idx, 0, -1) == []


def test_backward_lookup_diamond(diamond):
    idx = build_index(diamond, Q_DIAMOND)
    assert lookup_backward(idx, 2, 0) == [0]
    assert set(lookup_backward(idx, 3, 1)) == {1, 2, 3}
    assert lookup_backward(idx, 0, 3) == []  # s has no indexed in-edges


def test_lookup_unindexed_vertex():
    import kpaths

    g = kpaths.Graph.from_edges([(0, 1), (1, 2), (0, 3)])  # 3 is a dead end
    idx = build_index(g, Query(0, 2, 2))
    assert not idx.is_indexed(g.internal_id(3))
    assert lookup_forward(idx, g.internal_id(3), 2) == []


def test_source_never_a_neighbor_target():
    import kpaths

    # cycle back to s must not be indexed even though distances admit it
    g = kpaths.Graph.from_edges([(0, 1), (1, 0), (1, 2), (0, 2)])
    idx = build_index(g, Query(0, 2, 4))
    for v in range(idx.vertex_count):
        assert 0 not in lookup_forward(idx, v, 4)


def test_level_stats_diamond(diamond):
    idx = build_index(diamond, Q_DIAMOND)
    assert idx.level_stats[0] == pytest.approx(2.0)
    assert idx.level_stats[1] == pytest.approx(5 / 3)
    assert idx.level_stats[2] == pytest.approx(1.0)


def test_edge_filter_prunes_index(diamond):
    idx = build_index(diamond, Q_DIAMOND, edge_filter=lambda u, v: (u, v) != (1, 2))
    assert lookup_forward(idx, 1, 2) == [3]


def test_dump_index_diamond(diamond):
    idx = build_index(diamond, Q_DIAMOND)
    buf = io.StringIO()
    dump_index(idx, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "0 s=0 t=2 nbrs=[1 2]"
    assert len(lines) == 4


@settings(max_examples=60, deadline=None)
@given(graph_queries())
def test_vertex_indexed_iff_distance_sum_fits(gq):
    from kpaths import UNREACHABLE, bfs_distances

    g, q = gq
    idx = build_index(g, q)
    vs = bfs_distances(g, q.source, "forward", excluded=q.target).dist
    vt = bfs_distances(g, q.target, "reverse", excluded=q.source).dist
    for v in range(g.vertex_count):
        expected = (
            vs[v] != UNREACHABLE
            and vt[v] != UNREACHABLE
            and vs[v] + vt[v] <= q.hop_limit
        )
        assert idx.is_indexed(v) == expected


@settings(max_examples=60, deadline=None)
@given(graph_queries())
def test_forward_buckets_sorted_by_distance(gq):
    g, q = gq
    idx = build_index(g, q)
    for v in range(g.vertex_count):
        nbrs = lookup_forward(idx, v, q.hop_limit)
        dists = [idx.dist_to_t[u] for u in nbrs]
        assert dists == sorted(dists)
        # budgeted prefix property
        for b in range(q.hop_limit + 1):
            prefix = lookup_forward(idx, v, b)
            assert prefix == [u for u in nbrs if idx.dist_to_t[u] <= b]


@settings(max_examples=60, deadline=None)
@given(graph_queries())
def test_backward_mirrors_forward(gq):
    g, q = gq
    idx = build_index(g, q)
    t = q.target
    fwd = {
        (v, u)
        for v in range(g.vertex_count)
        if v != t
        for u in lookup_forward(idx, v, q.hop_limit)
    }
    bwd = {
        (u, v)
        for v in range(g.vertex_count)
        for u in lookup_backward(idx, v, q.hop_limit)
    }
    bwd.discard((t, t))  # the only padding entry on the backward side
    assert fwd == bwd
