import pytest

from kpaths import Graph, UNREACHABLE, WorkloadSpec, generate_workload
from kpaths.workload import bounded_distance, degree_pools


def chain_with_hub(n=30):
    # vertex 0 is a hub into everything; the rest form a cycle
    edges = [(0, v) for v in range(1, n)]
    edges += [(v, v % (n - 1) + 1) for v in range(1, n)]
    return Graph.from_edges(edges)


def test_degree_pools_split():
    g = chain_with_hub()
    high, rest = degree_pools(g)
    assert len(high) == g.vertex_count // 10
    assert len(high) + len(rest) == g.vertex_count
    assert g.internal_id(0) in high  # the hub dominates by out-degree


def test_degree_pools_modes():
    g = Graph.from_edges([(0, 1), (0, 2), (3, 0)])
    high_out, _ = degree_pools(g, "out")
    high_in, _ = degree_pools(g, "in")
    high_total, _ = degree_pools(g, "total")
    assert high_out == [g.internal_id(0)]
    assert high_total == [g.internal_id(0)]
    assert high_in != high_out or len(high_in) == 1


def test_bounded_distance():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3)])
    assert bounded_distance(g, 0, 2, 3) == 2
    assert bounded_distance(g, 0, 3, 2) == UNREACHABLE
    assert bounded_distance(g, 0, 0, 3) == 0


def test_generate_workload_deterministic():
    g = chain_with_hub()
    spec = WorkloadSpec(setting="hl", query_count=20, hop_limit=4, seed=7)
    a = generate_workload(g, spec)
    b = generate_workload(g, spec)
    assert [(q.source, q.target) for q in a] == [(q.source, q.target) for q in b]


def test_generate_workload_respects_pools_and_distance():
    g = chain_with_hub()
    high, rest = degree_pools(g)
    spec = WorkloadSpec(setting="hl", query_count=25, hop_limit=4, seed=3)
    for q in generate_workload(g, spec):
        assert q.source in high
        assert q.target in rest
        assert q.source != q.target
        d = bounded_distance(g, q.source, q.target, 3)
        assert d != UNREACHABLE and d <= 3


def test_generate_workload_invalid_setting():
    with pytest.raises(ValueError):
        WorkloadSpec(setting="xx")


def test_generate_workload_degenerate_pool():
    g = Graph.from_edges([(0, 1), (0, 2), (1, 2)])
    with pytest.raises(ValueError):
        generate_workload(g, WorkloadSpec(setting="hh", query_count=1))


def test_generate_workload_gives_up():
    # two disconnected components in ll: no pair within distance 3
    g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
                          (0, 6), (0, 7), (0, 8), (0, 9), (0, 10),
                          (11, 12)])
    spec = WorkloadSpec(setting="ll", query_count=5, seed=0)
    # low pool is all leaves; leaves have no outgoing edges except 11->12,
    # so most sampled pairs are unreachable; a tiny attempt cap trips fast
    with pytest.raises(RuntimeError):
        generate_workload(g, spec, max_attempts=10)
