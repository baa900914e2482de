import pytest
from hypothesis import given, settings

from kpaths import (
    U64_MAX,
    CollectSink,
    Graph,
    Query,
    ResultCapExceeded,
    count_walks,
    generic_dfs_enumerate,
    is_saturated,
    naive_enumerate,
    sat_add,
)
from kpaths.baseline import build_relations, eliminate_and_collect, join_relations
from conftest import graph_queries


def test_sat_add_saturates():
    assert sat_add(1, 2) == 3
    assert sat_add(U64_MAX, 1) == U64_MAX
    assert sat_add(U64_MAX - 1, 1) == U64_MAX
    assert is_saturated(U64_MAX)
    assert not is_saturated(U64_MAX - 1)


def test_naive_diamond(diamond):
    paths = naive_enumerate(diamond, Query(0, 3, 3))
    assert paths == {(0, 1, 3), (0, 2, 3), (0, 1, 2, 3)}
    assert naive_enumerate(diamond, Query(0, 3, 2)) == {(0, 1, 3), (0, 2, 3)}


def test_naive_interior_avoids_endpoints():
    # 0 -> 1 -> 0 -> 2 would revisit the source; must not appear
    g = Graph.from_edges([(0, 1), (1, 0), (0, 2), (1, 2)])
    assert naive_enumerate(g, Query(0, 2, 4)) == {(0, 2), (0, 1, 2)}


def test_naive_cap():
    g = Graph.from_edges([(0, 1), (0, 2), (1, 3), (2, 3)])
    with pytest.raises(ResultCapExceeded):
        naive_enumerate(g, Query(0, 3, 3), cap=1)


def test_generic_dfs_diamond(diamond):
    sink = CollectSink()
    n = generic_dfs_enumerate(diamond, Query(0, 3, 3), sink)
    assert n == 3
    assert set(sink.paths) == naive_enumerate(diamond, Query(0, 3, 3))


def test_generic_dfs_unreachable():
    g = Graph.from_edges([(0, 1), (2, 3)])
    assert generic_dfs_enumerate(g, Query(0, 3, 4), CollectSink()) == 0


def test_generic_dfs_early_stop(diamond):
    sink = CollectSink(limit=1)
    n = generic_dfs_enumerate(diamond, Query(0, 3, 3), sink)
    assert n == 1 and len(sink.paths) == 1


def test_count_walks_diamond(diamond):
    assert count_walks(diamond, Query(0, 3, 3)) == 3


def test_count_walks_exceeds_paths_with_cycle():
    # s -> v -> t plus a 2-cycle v <-> x pumps walks but not paths
    g = Graph.from_edges([(0, 1), (1, 2), (1, 3), (3, 1)])
    q = Query(0, 2, 4)
    assert len(naive_enumerate(g, q)) == 1
    assert count_walks(g, q) == 2  # 0-1-2 and 0-1-3-1-2


def test_count_walks_multi_cycle_fanout():
    # five 2-cycles off the single interior vertex: 1 path, 6 walks at k=4
    edges = [(0, 1), (1, 2)]
    for x in range(3, 8):
        edges += [(1, x), (x, 1)]
    g = Graph.from_edges(edges)
    q = Query(g.internal_id(0), g.internal_id(2), 4)
    assert len(naive_enumerate(g, q)) == 1
    assert count_walks(g, q) == 6


def test_build_relations_diamond(diamond):
    rels = build_relations(diamond, Query(0, 3, 3))
    s, a, b, t = 0, 1, 2, 3
    assert rels[0].tuples == {(s, a), (s, b)}
    # (t,t) in R_2 and (a,t) in R_3 are dangling (no upstream tail matches)
    # and the reducer removes them; every survivor joins into a result
    assert rels[1].tuples == {(a, t), (a, b), (b, t)}
    assert rels[2].tuples == {(b, t), (t, t)}


def test_build_relations_single_edge():
    g = Graph.from_edges([(0, 1)])
    rels = build_relations(g, Query(0, 1, 2))
    assert rels[0].tuples == {(0, 1)}
    assert rels[1].tuples == {(1, 1)}


def test_build_relations_unreachable_target_empties():
    g = Graph.from_edges([(0, 1), (2, 3)])
    rels = build_relations(g, Query(0, 3, 3))
    assert all(not rel.tuples for rel in rels)


def test_full_reducer_proposition_soundness(diamond):
    # every surviving tuple occurs in at least one evaluated join result
    q = Query(0, 3, 3)
    rels = build_relations(diamond, q)
    full = join_relations(rels)
    for i, rel in enumerate(rels):
        for v, v2 in rel.tuples:
            assert any(r[i] == v and r[i + 1] == v2 for r in full)


def test_full_reducer_drops_dangling():
    # 4 -> 5 dangles: 5 never reaches t and 4 is never a tail upstream
    g = Graph.from_edges([(0, 1), (1, 3), (4, 5), (0, 4)])
    rels = build_relations(g, Query(0, 3, 3))
    for rel in rels:
        for v, v2 in rel.tuples:
            assert g.internal_id(5) not in (v, v2)


def test_join_relations_padding(diamond):
    rels = build_relations(diamond, Query(0, 3, 3))
    full = join_relations(rels)
    assert all(len(r) == 4 for r in full)
    assert (0, 1, 3, 3) in full  # short path padded with t


def test_eliminate_and_collect_diamond(diamond):
    q = Query(0, 3, 3)
    rels = build_relations(diamond, q)
    assert eliminate_and_collect(rels) == naive_enumerate(diamond, q)


@settings(max_examples=60, deadline=None)
@given(graph_queries())
def test_generic_dfs_matches_naive(gq):
    g, q = gq
    sink = CollectSink()
    generic_dfs_enumerate(g, q, sink)
    assert set(sink.paths) == naive_enumerate(g, q)
    assert len(sink.paths) == len(set(sink.paths))  # no duplicates emitted


@settings(max_examples=60, deadline=None)
@given(graph_queries())
def test_chain_join_matches_naive(gq):
    g, q = gq
    rels = build_relations(g, q)
    assert eliminate_and_collect(rels) == naive_enumerate(g, q)


@settings(max_examples=60, deadline=None)
@given(graph_queries())
def test_walks_dominate_paths(gq):
    g, q = gq
    assert count_walks(g, q) >= len(naive_enumerate(g, q))
