"""Command-line front end: query execution, workload generation,
benchmarking, the dynamic-insertion experiment and result verification.

Exit codes: 0 success, 1 error, 3 query hit the time limit.
"""
from __future__ import annotations

import argparse
import csv
import json
import operator
import os
import random
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

from . import baseline, enumerators, optimizer, workload
from .constraints import Accumulator, Automaton, ConstraintBundle
from .graph import Graph, GraphFormatError, Query, load_edge_list, load_snapshot
from .index import build_index
from .sinks import CollectSink, CountingSink, DeadlineSink, StreamSink

DEFAULT_TIME_LIMIT_MS = 120_000.0
TIME_LIMIT_ENV = "KPATHS_TIME_LIMIT_MS"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 3

BENCH_COLUMNS = [
    "query_index",
    "source",
    "target",
    "hop_limit",
    "strategy",
    "cut",
    "t_hat",
    "result_count",
    "query_time_ms",
    "response_time_ms",
    "throughput",
    "timed_out",
]


@dataclass
class QueryMetrics:
    source: int
    target: int
    hop_limit: int
    strategy: str
    cut: Optional[int]
    t_hat: float
    result_count: int
    query_time_ms: float
    response_time_ms: float
    throughput: float
    timed_out: bool


def load_graph(path: str) -> Graph:
    with open(path, "rb") as fh:
        head = fh.read(4)
        fh.seek(0)
        if head == b"KPG1":
            return load_snapshot(fh)
        return load_edge_list(fh)


def default_time_limit_ms() -> float:
    raw = os.environ.get(TIME_LIMIT_ENV)
    return float(raw) if raw else DEFAULT_TIME_LIMIT_MS


def run_query(
    g: Graph,
    q: Query,
    sink,
    tau: float = optimizer.DEFAULT_TAU,
    force: Optional[str] = None,
    force_cut: Optional[int] = None,
    time_limit_ms: Optional[float] = None,
) -> tuple[QueryMetrics, "optimizer.Plan"]:
    """Index, plan and execute one query, collecting metrics.

    ``force`` overrides plan selection: "dfs", "join", "alg1" (graph
    baseline) or "oracle" (pruning-free reference).  Response time is the
    time to the first 1000 results for streaming strategies and equals
    the query time for the join.
    """
    limit_ms = time_limit_ms if time_limit_ms is not None else default_time_limit_ms()
    started = time.perf_counter()
    deadline = started + limit_ms / 1000.0
    counting = CountingSink(checkpoint=1000)

    def fanout(path):
        if not counting(path):
            return False
        return sink(path)

    guarded = DeadlineSink(fanout, deadline)

    idx = build_index(g, q)
    if force in (None, "auto"):
        plan = optimizer.select_plan(idx, q, tau=tau)
    elif force == "dfs":
        plan = optimizer.Plan(strategy="dfs", tau=tau, t_hat=optimizer.preliminary_estimate(idx))
    elif force == "join":
        counts = optimizer.full_estimate(idx)
        cut = force_cut if force_cut is not None else optimizer.choose_cut(counts)
        plan = optimizer.Plan(strategy="join", cut=cut, tau=tau, used_full_estimator=True)
    elif force == "alg1":
        plan = optimizer.Plan(strategy="alg1", tau=tau)
    elif force == "oracle":
        plan = optimizer.Plan(strategy="oracle", tau=tau)
    else:
        raise ValueError(f"unknown strategy override {force!r}")

    streaming = plan.strategy in ("dfs", "alg1", "oracle")
    if plan.strategy == "dfs":
        if q.constraints is not None:
            enumerators.constrained_dfs_enumerate(idx, q, guarded)
        else:
            enumerators.dfs_enumerate(idx, q, guarded)
    elif plan.strategy == "join":
        enumerators.join_enumerate(idx, q, plan.cut, guarded)
    elif plan.strategy == "alg1":
        baseline.generic_dfs_enumerate(g, q, guarded)
    else:  # oracle
        for path in sorted(baseline.naive_enumerate(g, q)):
            if not guarded(path):
                break

    ended = time.perf_counter()
    elapsed_ms = (ended - started) * 1000.0
    timed_out = guarded.expired
    query_time_ms = limit_ms if timed_out else elapsed_ms
    if streaming and counting.checkpoint_time is not None:
        response_ms = (counting.checkpoint_time - started) * 1000.0
    else:
        response_ms = query_time_ms
    throughput = counting.count / (query_time_ms / 1000.0) if query_time_ms > 0 else 0.0
    metrics = QueryMetrics(
        source=g.external_ids[q.source],
        target=g.external_ids[q.target],
        hop_limit=q.hop_limit,
        strategy=plan.strategy,
        cut=plan.cut,
        t_hat=plan.t_hat,
        result_count=counting.count,
        query_time_ms=query_time_ms,
        response_time_ms=response_ms,
        throughput=throughput,
        timed_out=timed_out,
    )
    return metrics, plan


def load_constraints(path: str, g: Graph) -> ConstraintBundle:
    """Build a constraint bundle from a JSON description.

    The file carries per-edge attributes (external ids) plus any of:
    a predicate on one attribute, an accumulator spec, an automaton spec.
    Edges absent from the table fail the predicate.
    """
    with open(path) as fh:
        spec = json.load(fh)
    attrs: dict[tuple[int, int], dict] = {}
    for rec in spec.get("edges", []):
        u = g.internal_id(rec["u"])
        v = g.internal_id(rec["v"])
        attrs[(u, v)] = rec

    ops = {"<=": operator.le, ">=": operator.ge, "<": operator.lt,
           ">": operator.gt, "==": operator.eq}

    predicate = None
    if "predicate" in spec:
        p = spec["predicate"]
        attr, op, value = p["attribute"], ops[p["op"]], p["value"]

        def predicate(u, v, _attr=attr, _op=op, _value=value):
            rec = attrs.get((u, v))
            return rec is not None and _attr in rec and _op(rec[_attr], _value)

    accumulator = None
    if "accumulator" in spec:
        a = spec["accumulator"]
        combine, identity = {
            "sum": (operator.add, 0),
            "mul": (operator.mul, 1),
            "min": (min, float("inf")),
            "max": (max, float("-inf")),
        }[a["op"]]
        accept_op = ops[a["accept_op"]]
        accept_value = a["accept_value"]
        accumulator = Accumulator(
            combine=combine,
            identity=identity,
            edge_values={e: rec.get("weight") for e, rec in attrs.items()},
            accept=lambda beta, _op=accept_op, _v=accept_value: _op(beta, _v),
        )

    automaton = None
    if "automaton" in spec:
        m = spec["automaton"]
        transitions = {(tr["from"], tr["label"]): tr["to"] for tr in m["transitions"]}
        automaton = Automaton(
            transitions=transitions,
            start=m["start"],
            accepting=frozenset(m["accepting"]),
            edge_labels={e: rec.get("label") for e, rec in attrs.items()},
        )

    return ConstraintBundle(predicate, accumulator, automaton)


def cmd_query(args) -> int:
    g = load_graph(args.graph)
    try:
        s = g.internal_id(args.source)
        t = g.internal_id(args.target)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    constraints = load_constraints(args.constraints, g) if args.constraints else None
    q = Query(s, t, args.k, constraints)

    if args.first is not None:
        sink = CollectSink(limit=args.first)
    elif args.stream:
        sink = StreamSink(sys.stdout, id_of=lambda v: g.external_ids[v])
    else:
        sink = CountingSink()

    force, force_cut = None, None
    if args.force_dfs:
        force = "dfs"
    elif args.force_join is not None:
        force, force_cut = "join", args.force_join
    elif args.baseline_alg1:
        force = "alg1"
    elif args.oracle:
        force = "oracle"

    metrics, plan = run_query(
        g, q, sink, tau=args.tau, force=force, force_cut=force_cut,
        time_limit_ms=args.time_limit_ms,
    )
    if args.explain:
        print(plan.to_json(), file=sys.stderr)
    if args.first is not None:
        for path in sink.paths:
            print(" ".join(str(g.external_ids[v]) for v in path))
    elif not args.stream:
        print(metrics.result_count)
    print(
        f"# time={metrics.query_time_ms:.3f}ms response={metrics.response_time_ms:.3f}ms "
        f"strategy={metrics.strategy} results={metrics.result_count}",
        file=sys.stderr,
    )
    return EXIT_TIMEOUT if metrics.timed_out else EXIT_OK


def _load_workload_file(path: str, g: Graph) -> list[Query]:
    queries = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            s_ext, t_ext, k = (int(x) for x in line.split())
            queries.append(Query(g.internal_id(s_ext), g.internal_id(t_ext), k))
    return queries


def cmd_gen_workload(args) -> int:
    g = load_graph(args.graph)
    spec = workload.WorkloadSpec(
        setting=args.setting,
        query_count=args.count,
        hop_limit=args.k,
        seed=args.seed,
        max_distance=args.max_distance,
        degree_mode=args.degree_mode,
    )
    queries = workload.generate_workload(g, spec)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        out.write(f"# setting={spec.setting} seed={spec.seed} k={spec.hop_limit}\n")
        for q in queries:
            out.write(
                f"{g.external_ids[q.source]} {g.external_ids[q.target]} {q.hop_limit}\n"
            )
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def cmd_bench(args) -> int:
    g = load_graph(args.graph)
    if args.workload:
        queries = _load_workload_file(args.workload, g)
        spec_info = {"workload_file": args.workload}
    else:
        spec = workload.WorkloadSpec(
            setting=args.setting, query_count=args.count, hop_limit=args.k,
            seed=args.seed,
        )
        queries = workload.generate_workload(g, spec)
        spec_info = asdict(spec)

    rows = []
    for i, q in enumerate(queries):
        metrics, _ = run_query(
            g, q, CountingSink(), tau=args.tau, time_limit_ms=args.time_limit_ms
        )
        row = asdict(metrics)
        row["query_index"] = i
        if args.deterministic:
            # zero timing fields so reports are byte-reproducible
            row["query_time_ms"] = 0.0
            row["response_time_ms"] = 0.0
            row["throughput"] = 0.0
        rows.append(row)

    with open(args.output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)

    def mean(key):
        return sum(r[key] for r in rows) / len(rows) if rows else 0.0

    sidecar = {
        "graph": args.graph,
        "spec": spec_info,
        "tau": args.tau,
        "query_count": len(rows),
        "mean_query_time_ms": mean("query_time_ms"),
        "mean_response_time_ms": mean("response_time_ms"),
        "mean_throughput": mean("throughput"),
        "mean_result_count": mean("result_count"),
        "timed_out": sum(1 for r in rows if r["timed_out"]),
    }
    with open(args.output + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
    print(f"wrote {len(rows)} rows to {args.output}")
    return EXIT_OK


def cmd_dynamic(args) -> int:
    g = load_graph(args.graph)
    if args.k < 3:
        print("error: dynamic experiment needs k >= 3 (cycle query uses k - 1)",
              file=sys.stderr)
        return EXIT_ERROR
    edges = [(g.external_ids[u], g.external_ids[v]) for u, v in g.edges()]
    rng = random.Random(args.seed)
    rng.shuffle(edges)
    held_out = edges[: max(1, int(len(edges) * args.fraction))]
    base_edges = edges[len(held_out):]
    if not base_edges:
        base_edges, held_out = held_out[:1], held_out[1:]
    current = Graph.from_edges(base_edges)

    response_times = []
    ran = 0
    for u_ext, v_ext in held_out:
        current.append_edges([(u_ext, v_ext)])
        s = current.internal_id(v_ext)
        t = current.internal_id(u_ext)
        q = Query(s, t, args.k - 1)
        metrics, _ = run_query(current, q, CountingSink(),
                               time_limit_ms=args.time_limit_ms)
        response_times.append(metrics.response_time_ms)
        ran += 1

    response_times.sort()
    p999 = response_times[min(len(response_times) - 1,
                              max(0, int(len(response_times) * 0.999) - 1))]
    report = {
        "insertions": ran,
        "hop_limit": args.k,
        "fraction": args.fraction,
        "p999_response_time_ms": p999,
        "mean_response_time_ms": sum(response_times) / len(response_times),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    try:
        s = g.internal_id(args.source)
        t = g.internal_id(args.target)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    q = Query(s, t, args.k)
    expected = baseline.naive_enumerate(g, q, cap=args.cap)

    checks = []
    sink = CollectSink()
    baseline.generic_dfs_enumerate(g, q, sink)
    checks.append(("generic-dfs", set(sink.paths) == expected))

    idx = build_index(g, q)
    sink = CollectSink()
    enumerators.dfs_enumerate(idx, q, sink)
    checks.append(("index-dfs", set(sink.paths) == expected))

    for cut in range(1, q.hop_limit):
        sink = CollectSink()
        enumerators.join_enumerate(idx, q, cut, sink)
        checks.append((f"index-join(cut={cut})", set(sink.paths) == expected))

    rels = baseline.build_relations(g, q)
    checks.append(
        ("chain-join", baseline.eliminate_and_collect(rels, cap=args.cap) == expected)
    )

    ok = True
    for name, passed in checks:
        print(f"{name}: {'PASS' if passed else 'FAIL'}")
        ok = ok and passed
    print(f"paths: {len(expected)}")
    return EXIT_OK if ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpaths",
        description="Enumerate all simple s-t paths with at most k hops.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("graph", help="edge-list file or KPG1 binary snapshot")
        p.add_argument("--tau", type=float, default=optimizer.DEFAULT_TAU,
                       help="search-space threshold gating full plan optimization")
        p.add_argument("--time-limit-ms", type=float, default=None,
                       help=f"per-query time limit (default {DEFAULT_TIME_LIMIT_MS:.0f}, "
                            f"env {TIME_LIMIT_ENV})")

    p = sub.add_parser("query", help="run a single query")
    add_common(p)
    p.add_argument("source", type=int, help="source vertex (external id)")
    p.add_argument("target", type=int, help="target vertex (external id)")
    p.add_argument("k", type=int, help="hop limit")
    p.add_argument("--first", type=int, default=None, help="print the first N paths")
    p.add_argument("--stream", action="store_true", help="stream every path to stdout")
    p.add_argument("--explain", action="store_true", help="dump the plan trace to stderr")
    p.add_argument("--force-dfs", action="store_true")
    p.add_argument("--force-join", type=int, default=None, metavar="CUT")
    p.add_argument("--baseline-alg1", action="store_true",
                   help="use the distance-pruned graph baseline")
    p.add_argument("--oracle", action="store_true", help="use the pruning-free oracle")
    p.add_argument("--constraints", default=None, help="JSON constraint bundle file")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("gen-workload", help="generate a benchmark workload")
    p.add_argument("graph")
    p.add_argument("--setting", choices=workload.SETTINGS, default="hh",
                   help="endpoint pools, source then target: h = top 10%% by "
                        "degree, l = the rest")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-distance", type=int, default=3)
    p.add_argument("--degree-mode", choices=("out", "in", "total"), default="out")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gen_workload)

    p = sub.add_parser("bench", help="run a workload and write a CSV report")
    add_common(p)
    p.add_argument("--workload", default=None, help="query file from gen-workload")
    p.add_argument("--setting", choices=workload.SETTINGS, default="hh")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true",
                   help="zero timing columns for byte-reproducible reports")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dynamic", help="edge-insertion cycle-query experiment")
    add_common(p)
    p.add_argument("--fraction", type=float, default=0.1)
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_dynamic)

    p = sub.add_parser("verify", help="cross-check all strategies against the oracle")
    p.add_argument("graph")
    p.add_argument("source", type=int)
    p.add_argument("target", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
