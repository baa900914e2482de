"""Shared fixtures: the diamond instance, a randomized graph/query corpus
and hypothesis strategies for small directed graphs.

Corpus instances are capped by walk count so the pruning-free oracle stays
cheap; zero-result queries are kept on purpose.
"""
from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from kpaths import Graph, Query, count_walks

# diamond: s -> {a, b}, a -> {b, t}, b -> t, with ids s=0 a=1 b=2 t=3
DIAMOND_EDGES = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)]

CORPUS_SIZE = 500
WALK_CAP = 2000


@pytest.fixture(scope="session")
def diamond() -> Graph:
    return Graph.from_edges(DIAMOND_EDGES)


def random_instance(rng: random.Random) -> tuple[Graph, Query]:
    """One random directed graph (8-40 vertices, edge probability
    0.05-0.4) plus a random query, with k lowered until the walk count
    fits under the oracle cap."""
    while True:
        n = rng.randint(8, 40)
        p = rng.uniform(0.05, 0.4)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < p
        ]
        if not edges:
            continue
        g = Graph.from_edges(edges)
        if g.vertex_count < 2:
            continue
        s = rng.randrange(g.vertex_count)
        t = rng.randrange(g.vertex_count)
        if s == t:
            continue
        k = rng.randint(2, 6)
        while k > 2 and count_walks(g, Query(s, t, k)) > WALK_CAP:
            k -= 1
        if count_walks(g, Query(s, t, k)) > WALK_CAP:
            continue
        return g, Query(s, t, k)


@pytest.fixture(scope="session")
def corpus() -> list[tuple[Graph, Query]]:
    rng = random.Random(20260823)
    return [random_instance(rng) for _ in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def small_corpus(corpus) -> list[tuple[Graph, Query]]:
    """First 100 corpus instances, for the pricier per-instance checks."""
    return corpus[:100]


@st.composite
def small_graphs(draw) -> Graph:
    n = draw(st.integers(min_value=2, max_value=12))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(
        st.lists(st.sampled_from(pairs), min_size=1, max_size=40, unique=True)
    )
    return Graph.from_edges(edges)


@st.composite
def graph_queries(draw) -> tuple[Graph, Query]:
    g = draw(small_graphs())
    s = draw(st.integers(min_value=0, max_value=g.vertex_count - 1))
    t = draw(
        st.integers(min_value=0, max_value=g.vertex_count - 1).filter(
            lambda v: v != s
        )
    )
    k = draw(st.integers(min_value=2, max_value=6))
    return g, Query(s, t, k)
