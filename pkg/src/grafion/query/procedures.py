"""Registered CALL procedures.

Each procedure yields declared columns; YIELD projects a subset. Graph
name arguments are accepted and ignored (this is a single-graph engine);
map arguments carry per-call options such as the weight property.
"""

from __future__ import annotations

from typing import Any

from ..errors import BadArguments, UnknownProcedure
from ..algorithms import (
    dijkstra,
    louvain,
    pagerank,
    weakly_connected_components,
)


def _arg_values(context, evaluator, clause, binding) -> list[Any]:
    return [evaluator.value(arg, binding) for arg in clause.args]


def _options_map(args: list[Any]) -> dict:
    for arg in args:
        if isinstance(arg, dict):
            return arg
    return {}


def _weight_key(options: dict) -> str | None:
    key = options.get("relationshipWeightProperty")
    return key if isinstance(key, str) else None


def _proc_pagerank(context, evaluator, clause, binding):
    args = _arg_values(context, evaluator, clause, binding)
    options = _options_map(args)
    scores = pagerank(context.g, weight=_weight_key(options))
    rows = [{"nodeId": node, "score": scores[node]} for node in sorted(scores)]
    return ["nodeId", "score"], rows


def _proc_louvain(context, evaluator, clause, binding):
    args = _arg_values(context, evaluator, clause, binding)
    options = _options_map(args)
    g = context.g.as_undirected() if context.g.directed else context.g
    partition, _q = louvain(g, weight=_weight_key(options))
    rows = [
        {"nodeId": node, "communityId": partition[node]} for node in sorted(partition)
    ]
    return ["nodeId", "communityId"], rows


def _proc_wcc(context, evaluator, clause, binding):
    _arg_values(context, evaluator, clause, binding)  # projection options ignored
    partition = weakly_connected_components(context.g)
    rows = [
        {"nodeId": node, "componentId": partition[node]} for node in sorted(partition)
    ]
    return ["nodeId", "componentId"], rows


def _min_weight_between(g, u: int, v: int, key: str | None) -> float:
    from ..algorithms import edge_weight

    best = None
    for edge in g.out_edges(u):
        other = edge.target if edge.source == u else edge.source
        if g.directed and edge.source != u:
            continue
        if other == v:
            w = edge_weight(edge, key)
            best = w if best is None or w < best else best
    if best is None:
        raise BadArguments(f"no edge between {u} and {v}")
    return best


def _proc_dijkstra(context, evaluator, clause, binding):
    from .executor import NodeRef

    args = _arg_values(context, evaluator, clause, binding)
    options = _options_map(args)
    source = options.get("sourceNode")
    target = options.get("targetNode")
    if not isinstance(source, NodeRef) or not isinstance(target, NodeRef):
        raise BadArguments(
            "gds.shortestPath.dijkstra.stream needs sourceNode and targetNode"
        )
    key = _weight_key(options)
    path, _cost = dijkstra(context.g, source.id, target.id, weight=key)
    rows = []
    running = 0.0
    for i, node in enumerate(path):
        if i > 0:
            running += _min_weight_between(context.g, path[i - 1], node, key)
        rows.append({"nodeId": node, "cost": running})
    return ["nodeId", "cost"], rows


def _proc_export_csv(context, evaluator, clause, binding):
    from ..storage import export_csv_all

    args = _arg_values(context, evaluator, clause, binding)
    if not args or not isinstance(args[0], str):
        raise BadArguments("apoc.export.csv.all needs a file name")
    options = _options_map(args[1:])
    delimiter = options.get("delimiter", ",")
    use_types = bool(options.get("useTypes", False))
    path = context.resolve_file(args[0])
    counts = export_csv_all(context.g, path, delimiter=delimiter, use_types=use_types)
    row = {"file": args[0], "nodes": counts["nodes"], "relationships": counts["edges"]}
    return ["file", "nodes", "relationships"], [row]


PROCEDURES = {
    "gds.pageRank.stream": _proc_pagerank,
    "gds.louvain.stream": _proc_louvain,
    "gds.wcc.stream": _proc_wcc,
    "gds.shortestPath.dijkstra.stream": _proc_dijkstra,
    "apoc.export.csv.all": _proc_export_csv,
}


def invoke_procedure(context, evaluator, clause, binding):
    handler = PROCEDURES.get(clause.procedure)
    if handler is None:
        raise UnknownProcedure(clause.procedure)
    return handler(context, evaluator, clause, binding)


def call_procedure(g, name: str, arguments=(), import_dir: str | None = None):
    """Invoke a registered procedure directly, outside any statement.

    Arguments are plain Python values (strings, maps, node refs);
    returns a RowSet with the procedure's declared columns.
    """
    from . import ast
    from .executor import execute

    clause = ast.CallClause(name, tuple(ast.Literal(a) for a in arguments))
    return execute(g, ast.Statement((clause,)), import_dir=import_dir)
