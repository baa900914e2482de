"""Hop-constrained s-t simple path enumeration.

Typical flow: load a :class:`Graph`, form a :class:`Query`, build the
per-query :class:`LightweightIndex`, let :func:`select_plan` pick a
strategy and run one of the enumerators with a result sink.
"""

from .baseline import (
    U64_MAX,
    ResultCapExceeded,
    count_walks,
    generic_dfs_enumerate,
    is_saturated,
    naive_enumerate,
    sat_add,
)
from .constraints import (
    Accumulator,
    Automaton,
    ConstraintBundle,
    ConstraintConfigError,
)
from .enumerators import (
    JoinMemoryError,
    constrained_dfs_enumerate,
    dfs_enumerate,
    dfs_enumerate_relaxed,
    join_enumerate,
)
from .graph import (
    UNREACHABLE,
    Graph,
    GraphFormatError,
    Query,
    bfs_distances,
    load_edge_list,
    load_snapshot,
    save_snapshot,
)
from .index import (
    LightweightIndex,
    build_index,
    dump_index,
    lookup_backward,
    lookup_forward,
    lookup_level,
)
from .optimizer import (
    DEFAULT_TAU,
    CountTable,
    Plan,
    calibrate_tau,
    choose_cut,
    full_estimate,
    preliminary_estimate,
    select_plan,
)
from .sinks import CollectSink, CountingSink, DeadlineSink, StreamSink
from .workload import SETTINGS, WorkloadSpec, generate_workload

__version__ = "0.1.0"

__all__ = [
    "U64_MAX",
    "UNREACHABLE",
    "DEFAULT_TAU",
    "SETTINGS",
    "Accumulator",
    "Automaton",
    "CollectSink",
    "ConstraintBundle",
    "ConstraintConfigError",
    "CountTable",
    "CountingSink",
    "DeadlineSink",
    "Graph",
    "GraphFormatError",
    "JoinMemoryError",
    "LightweightIndex",
    "Plan",
    "Query",
    "ResultCapExceeded",
    "StreamSink",
    "WorkloadSpec",
    "bfs_distances",
    "build_index",
    "calibrate_tau",
    "choose_cut",
    "constrained_dfs_enumerate",
    "count_walks",
    "dfs_enumerate",
    "dfs_enumerate_relaxed",
    "dump_index",
    "full_estimate",
    "generate_workload",
    "generic_dfs_enumerate",
    "is_saturated",
    "join_enumerate",
    "load_edge_list",
    "load_snapshot",
    "lookup_backward",
    "lookup_forward",
    "lookup_level",
    "naive_enumerate",
    "preliminary_estimate",
    "sat_add",
    "save_snapshot",
    "select_plan",
]
