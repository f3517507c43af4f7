"""Tree-walking statement executor.

Clauses transform a stream of binding rows; pattern matching enumerates
candidates in ascending node-id order so row order is deterministic
before ORDER BY. Missing properties evaluate to null and null never
satisfies a comparison. RETURN projects live node/edge/path references
into immutable snapshots so result rows survive later mutations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Iterator

from ..errors import (
    BadArguments,
    ExecError,
    FileNotFound,
    MissingParameter,
    NoPath,
    TypeMismatch,
)
from ..algorithms import bfs_shortest_path
from ..graph import PropertyGraph
from ..values import check_value, storage_key, try_compare
from . import ast
from .parser import parse_statement
from .printer import print_expression


# -- runtime values -----------------------------------------------------------


@dataclass(frozen=True)
class NodeRef:
    id: int


@dataclass(frozen=True)
class EdgeRef:
    id: int


@dataclass(frozen=True)
class PathRef:
    node_ids: tuple[int, ...]


@dataclass
class NodeSnapshot:
    id: int
    labels: list[str]
    properties: dict[str, Any]


@dataclass
class EdgeSnapshot:
    id: int
    source: int
    target: int
    type: str
    properties: dict[str, Any]


@dataclass
class PathSnapshot:
    nodes: list[NodeSnapshot]


@dataclass
class Summary:
    nodes_created: int = 0
    relationships_created: int = 0
    properties_set: int = 0
    nodes_deleted: int = 0
    relationships_deleted: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "nodes_created": self.nodes_created,
            "relationships_created": self.relationships_created,
            "properties_set": self.properties_set,
            "nodes_deleted": self.nodes_deleted,
            "relationships_deleted": self.relationships_deleted,
        }


@dataclass
class RowSet:
    columns: list[str]
    rows: list[tuple]
    summary: Summary = field(default_factory=Summary)


def cell_to_jsonable(cell: Any) -> Any:
    """Result cell as plain JSON-serializable data (wire and CLI format)."""
    if isinstance(cell, NodeSnapshot):
        return {"id": cell.id, "labels": cell.labels, "properties": cell.properties}
    if isinstance(cell, EdgeSnapshot):
        return {
            "id": cell.id,
            "source": cell.source,
            "target": cell.target,
            "type": cell.type,
            "properties": cell.properties,
        }
    if isinstance(cell, PathSnapshot):
        return {"nodes": [cell_to_jsonable(n) for n in cell.nodes]}
    if isinstance(cell, list):
        return [cell_to_jsonable(v) for v in cell]
    return cell


# -- execution context ----------------------------------------------------------


class _Context:
    def __init__(self, g: PropertyGraph, parameters: dict | None, import_dir: str | None):
        self.g = g
        self.parameters = parameters or {}
        self.import_dir = import_dir
        self.summary = Summary()

    def resolve_file(self, url: str) -> str:
        path = url
        if path.startswith("file:///"):
            path = path[len("file:///"):]
        if os.path.isabs(path):
            return path
        return os.path.join(self.import_dir or os.getcwd(), path)


# -- expression evaluation --------------------------------------------------------


def _as_number(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return None
    return value


def _to_integer(value):
    if value is None or isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return int(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return int(text)
        except ValueError:
            try:
                return int(float(text))
            except (ValueError, OverflowError):
                return None
    return None


def _to_float(value):
    if value is None or isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            result = float(value.strip())
        except ValueError:
            return None
        return None if result != result else result
    return None


def _values_eq(a, b) -> bool | None:
    """Query equality: null propagates, numerics coerce, refs match by id."""
    if a is None or b is None:
        return None
    if isinstance(a, NodeRef) and isinstance(b, NodeRef):
        return a.id == b.id
    if isinstance(a, EdgeRef) and isinstance(b, EdgeRef):
        return a.id == b.id
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return False
        return all(_values_eq(x, y) is True for x, y in zip(a, b))
    cmp = try_compare(a, b)
    if cmp is None:
        return False
    return cmp == 0


class _Evaluator:
    def __init__(self, context: _Context):
        self.context = context

    def value(self, expr, binding: dict) -> Any:
        g = self.context.g
        if isinstance(expr, ast.Literal):
            return expr.value
        if isinstance(expr, ast.Parameter):
            if expr.name not in self.context.parameters:
                raise MissingParameter(expr.name)
            return check_value_or_list(self.context.parameters[expr.name])
        if isinstance(expr, ast.Variable):
            return binding.get(expr.name)
        if isinstance(expr, ast.Property):
            subject = self.value(expr.subject, binding)
            if subject is None:
                return None
            if isinstance(subject, NodeRef):
                node = g.nodes.get(subject.id)
                return None if node is None else node.properties.get(expr.key)
            if isinstance(subject, EdgeRef):
                edge = g.edges.get(subject.id)
                return None if edge is None else edge.properties.get(expr.key)
            if isinstance(subject, dict):
                return subject.get(expr.key)
            raise TypeMismatch(f"cannot read property {expr.key} of {type(subject).__name__}")
        if isinstance(expr, ast.MapLiteral):
            return {k: self.value(v, binding) for k, v in expr.entries}
        if isinstance(expr, ast.FuncCall):
            return self.call_function(expr, binding)
        if isinstance(expr, ast.Concat):
            left = self.value(expr.left, binding)
            right = self.value(expr.right, binding)
            if left is None or right is None:
                return None
            if isinstance(left, list) and isinstance(right, list):
                return left + right
            raise TypeMismatch("+ concatenates collected lists only")
        if isinstance(expr, (ast.Compare, ast.And, ast.Or, ast.Not,
                             ast.InList, ast.PatternExpr)):
            return self.truth(expr, binding)
        raise ExecError(f"cannot evaluate {expr!r}")

    def call_function(self, expr: ast.FuncCall, binding: dict) -> Any:
        name = expr.name
        lowered = name.lower()
        if lowered in ast.AGGREGATE_FUNCTIONS:
            raise ExecError(f"{name}() is an aggregate and needs a RETURN or WITH")
        if lowered == "tointeger":
            self._need_args(expr, 1)
            return _to_integer(self.value(expr.args[0], binding))
        if lowered == "tofloat":
            self._need_args(expr, 1)
            return _to_float(self.value(expr.args[0], binding))
        if name == "gds.util.asNode":
            self._need_args(expr, 1)
            raw = self.value(expr.args[0], binding)
            node_id = _to_integer(raw)
            if node_id is None or node_id not in self.context.g.nodes:
                return None
            return NodeRef(node_id)
        raise ExecError(f"unknown function: {name}")

    @staticmethod
    def _need_args(expr: ast.FuncCall, count: int) -> None:
        if expr.star or len(expr.args) != count:
            raise BadArguments(f"{expr.name}() takes {count} argument(s)")

    def truth(self, expr, binding: dict) -> bool:
        """Three-valued logic collapsed to a filter decision (null is false)."""
        result = self._truth3(expr, binding)
        return result is True

    def _truth3(self, expr, binding: dict):
        if isinstance(expr, ast.And):
            left = self._truth3(expr.left, binding)
            right = self._truth3(expr.right, binding)
            if left is False or right is False:
                return False
            if left is None or right is None:
                return None
            return True
        if isinstance(expr, ast.Or):
            left = self._truth3(expr.left, binding)
            right = self._truth3(expr.right, binding)
            if left is True or right is True:
                return True
            if left is None or right is None:
                return None
            return False
        if isinstance(expr, ast.Not):
            inner = self._truth3(expr.operand, binding)
            return None if inner is None else not inner
        if isinstance(expr, ast.Compare):
            left = self.value(expr.left, binding)
            right = self.value(expr.right, binding)
            if expr.op == "=":
                return _values_eq(left, right)
            if expr.op == "<>":
                eq = _values_eq(left, right)
                return None if eq is None else not eq
            if left is None or right is None:
                return None
            cmp = try_compare(left, right)
            if cmp is None:
                return False
            return {"<": cmp < 0, ">": cmp > 0, "<=": cmp <= 0, ">=": cmp >= 0}[expr.op]
        if isinstance(expr, ast.InList):
            item = self.value(expr.item, binding)
            container = self.value(expr.container, binding)
            if container is None:
                return None
            if not isinstance(container, list):
                raise TypeMismatch("IN expects a list on the right")
            return any(_values_eq(item, element) is True for element in container)
        if isinstance(expr, ast.PatternExpr):
            matcher = _Matcher(self.context, self)
            for _ in matcher.match_pattern(expr.pattern, binding):
                return True
            return False
        value = self.value(expr, binding)
        if value is None:
            return None
        if isinstance(value, bool):
            return value
        raise TypeMismatch(f"expected a boolean, got {value!r}")


def check_value_or_list(value):
    if isinstance(value, list):
        return [check_value_or_list(v) for v in value]
    return check_value(value)


# -- pattern matching ----------------------------------------------------------


class _Matcher:
    def __init__(self, context: _Context, evaluator: _Evaluator):
        self.context = context
        self.evaluator = evaluator

    def node_candidates(self, pattern: ast.NodePattern, binding: dict) -> list[int]:
        """Node ids satisfying label and property map, ascending."""
        g = self.context.g
        props = [
            (key, self.evaluator.value(value, binding))
            for key, value in pattern.properties
        ]
        if pattern.variable and pattern.variable in binding:
            bound = binding[pattern.variable]
            if not isinstance(bound, NodeRef):
                raise TypeMismatch(f"{pattern.variable} is not a node")
            ids = [bound.id] if bound.id in g.nodes else []
        elif props:
            key, value = props[0]
            ids = g.find_nodes(pattern.label, key, value)
        elif pattern.label is not None:
            ids = [n for n in g.node_ids() if pattern.label in g.nodes[n].labels]
        else:
            ids = g.node_ids()
        out = []
        for node_id in ids:
            node = g.nodes[node_id]
            if pattern.label is not None and pattern.label not in node.labels:
                continue
            ok = True
            for key, value in props:
                have = node.properties.get(key)
                if have is None or _values_eq(have, value) is not True:
                    ok = False
                    break
            if ok:
                out.append(node_id)
        return out

    def edge_matches(self, rel: ast.RelPattern, edge, binding: dict) -> bool:
        if rel.type is not None and edge.type != rel.type:
            return False
        for key, value in rel.properties:
            want = self.evaluator.value(value, binding)
            have = edge.properties.get(key)
            if have is None or _values_eq(have, want) is not True:
                return False
        return True

    def expansions(self, node_id: int, rel: ast.RelPattern) -> list[tuple]:
        """(neighbor, edge) candidates for one hop, ascending (neighbor, edge id)."""
        g = self.context.g
        found = []
        if g.directed:
            if rel.direction in ("out", "both"):
                for edge in g.out_edges(node_id):
                    found.append((edge.target, edge))
            if rel.direction in ("in", "both"):
                for edge in g.in_edges(node_id):
                    found.append((edge.source, edge))
        else:
            for edge in g.out_edges(node_id):
                other = edge.target if edge.source == node_id else edge.source
                found.append((other, edge))
        found.sort(key=lambda pair: (pair[0], pair[1].id))
        return found

    def match_pattern(
        self, pattern: ast.PathPattern, binding: dict
    ) -> Iterator[dict]:
        if pattern.shortest:
            yield from self.match_shortest(pattern, binding)
            return
        yield from self._extend(pattern, 0, binding, frozenset())

    def _extend(
        self, pattern: ast.PathPattern, index: int, binding: dict, used: frozenset
    ) -> Iterator[dict]:
        node_pattern = pattern.nodes[index]
        if index == 0:
            for node_id in self.node_candidates(node_pattern, binding):
                next_binding = dict(binding)
                if node_pattern.variable:
                    next_binding[node_pattern.variable] = NodeRef(node_id)
                yield from self._hop(pattern, 0, node_id, next_binding, used)
            return

    def _hop(
        self, pattern: ast.PathPattern, rel_index: int, node_id: int,
        binding: dict, used: frozenset,
    ) -> Iterator[dict]:
        if rel_index == len(pattern.rels):
            yield binding
            return
        rel = pattern.rels[rel_index]
        target_pattern = pattern.nodes[rel_index + 1]
        for neighbor, edge in self.expansions(node_id, rel):
            if edge.id in used:
                continue
            if not self.edge_matches(rel, edge, binding):
                continue
            if not self._node_ok(target_pattern, neighbor, binding):
                continue
            next_binding = dict(binding)
            if rel.variable:
                next_binding[rel.variable] = EdgeRef(edge.id)
            if target_pattern.variable:
                next_binding[target_pattern.variable] = NodeRef(neighbor)
            yield from self._hop(
                pattern, rel_index + 1, neighbor, next_binding, used | {edge.id}
            )

    def _node_ok(self, pattern: ast.NodePattern, node_id: int, binding: dict) -> bool:
        g = self.context.g
        if pattern.variable and pattern.variable in binding:
            bound = binding[pattern.variable]
            return isinstance(bound, NodeRef) and bound.id == node_id
        node = g.nodes.get(node_id)
        if node is None:
            return False
        if pattern.label is not None and pattern.label not in node.labels:
            return False
        for key, value in pattern.properties:
            want = self.evaluator.value(value, binding)
            have = node.properties.get(key)
            if have is None or _values_eq(have, want) is not True:
                return False
        return True

    def match_shortest(self, pattern: ast.PathPattern, binding: dict) -> Iterator[dict]:
        g = self.context.g
        start_pattern, end_pattern = pattern.nodes
        for start in self.node_candidates(start_pattern, binding):
            for end in self.node_candidates(end_pattern, binding):
                try:
                    path = bfs_shortest_path(g, start, end, ignore_direction=True)
                except NoPath:
                    continue
                next_binding = dict(binding)
                if start_pattern.variable:
                    next_binding[start_pattern.variable] = NodeRef(start)
                if end_pattern.variable:
                    next_binding[end_pattern.variable] = NodeRef(end)
                if pattern.variable:
                    next_binding[pattern.variable] = PathRef(tuple(path))
                yield next_binding


# -- aggregation -----------------------------------------------------------------


def _group_key(value) -> Any:
    if isinstance(value, (NodeRef, EdgeRef, PathRef)):
        return (type(value).__name__, value)
    if isinstance(value, list):
        return ("list", tuple(_group_key(v) for v in value))
    if isinstance(value, dict):
        return ("map", tuple(sorted((k, _group_key(v)) for k, v in value.items())))
    if value is None:
        return ("null",)
    return storage_key(value)


class _Aggregator:
    """One aggregate call (count / collect) accumulating over a group."""

    def __init__(self, call: ast.FuncCall):
        self.call = call
        self.count = 0
        self.values: list = []
        self.seen: set = set()

    def feed(self, evaluator: _Evaluator, binding: dict) -> None:
        name = self.call.name.lower()
        if self.call.star:
            self.count += 1
            return
        value = evaluator.value(self.call.args[0], binding)
        if value is None:
            return
        if self.call.distinct:
            key = _group_key(value)
            if key in self.seen:
                return
            self.seen.add(key)
        if name == "count":
            self.count += 1
        else:
            self.values.append(value)

    def result(self):
        return self.count if self.call.name.lower() == "count" else self.values


def _split_aggregates(expr):
    """Replace aggregate calls with slot variables; returns (expr, calls)."""
    calls: list[ast.FuncCall] = []

    def walk(e):
        if isinstance(e, ast.FuncCall):
            if e.name.lower() in ast.AGGREGATE_FUNCTIONS:
                calls.append(e)
                return ast.Variable(f"  agg{len(calls) - 1}")
            return ast.FuncCall(e.name, tuple(walk(a) for a in e.args),
                                e.distinct, e.star)
        if isinstance(e, ast.Property):
            return ast.Property(walk(e.subject), e.key)
        if isinstance(e, ast.Concat):
            return ast.Concat(walk(e.left), walk(e.right))
        if isinstance(e, ast.Compare):
            return ast.Compare(e.op, walk(e.left), walk(e.right))
        if isinstance(e, ast.And):
            return ast.And(walk(e.left), walk(e.right))
        if isinstance(e, ast.Or):
            return ast.Or(walk(e.left), walk(e.right))
        if isinstance(e, ast.Not):
            return ast.Not(walk(e.operand))
        if isinstance(e, ast.InList):
            return ast.InList(walk(e.item), walk(e.container))
        return e

    return walk(expr), calls


def _project(
    evaluator: _Evaluator, items: tuple, rows: list[dict]
) -> list[tuple[dict, dict]]:
    """Evaluate projection items; returns (output values, order env) per row.

    Aggregation groups by the non-aggregate items, first-seen order.
    """
    names = []
    for item in items:
        names.append(item.alias or print_expression(item.expression))

    if not any(ast.is_aggregate(item.expression) for item in items):
        out = []
        for binding in rows:
            values = {name: evaluator.value(item.expression, binding)
                      for name, item in zip(names, items)}
            env = dict(binding)
            env.update(values)
            out.append((values, env))
        return out

    plain_items = []  # (name, expr or None if aggregate-bearing, rewritten, calls)
    for name, item in zip(names, items):
        rewritten, calls = _split_aggregates(item.expression)
        plain_items.append((name, item.expression, rewritten, calls))

    groups: dict = {}
    order: list = []
    for binding in rows:
        key_parts = []
        for name, original, rewritten, calls in plain_items:
            if not calls:
                key_parts.append(_group_key(evaluator.value(original, binding)))
        key = tuple(key_parts)
        if key not in groups:
            groups[key] = (binding, [
                [_Aggregator(c) for c in calls] for _, _, _, calls in plain_items
            ])
            order.append(key)
        _, aggregator_rows = groups[key]
        for (_, _, _, calls), aggregators in zip(plain_items, aggregator_rows):
            for call, aggregator in zip(calls, aggregators):
                aggregator.feed(evaluator, binding)
    if not rows and all(calls for _, _, _, calls in plain_items):
        # a pure-aggregate projection over zero rows is one empty group
        groups[()] = ({}, [
            [_Aggregator(c) for c in calls] for _, _, _, calls in plain_items
        ])
        order.append(())

    out = []
    for key in order:
        binding, aggregator_rows = groups[key]
        values = {}
        for (name, original, rewritten, calls), aggregators in zip(
            plain_items, aggregator_rows
        ):
            if not calls:
                values[name] = evaluator.value(original, binding)
            else:
                env = dict(binding)
                for i, aggregator in enumerate(aggregators):
                    env[f"  agg{i}"] = aggregator.result()
                values[name] = evaluator.value(rewritten, env)
        env = dict(values)
        out.append((values, env))
    return out


# -- snapshots ---------------------------------------------------------------------


def _snapshot(g: PropertyGraph, value):
    if isinstance(value, NodeRef):
        node = g.nodes.get(value.id)
        if node is None:
            return None
        return NodeSnapshot(node.id, sorted(node.labels), dict(node.properties))
    if isinstance(value, EdgeRef):
        edge = g.edges.get(value.id)
        if edge is None:
            return None
        return EdgeSnapshot(edge.id, edge.source, edge.target, edge.type,
                            dict(edge.properties))
    if isinstance(value, PathRef):
        return PathSnapshot([_snapshot(g, NodeRef(n)) for n in value.node_ids])
    if isinstance(value, list):
        return [_snapshot(g, v) for v in value]
    if isinstance(value, dict):
        return {k: _snapshot(g, v) for k, v in value.items()}
    return value


# -- the executor -------------------------------------------------------------------


def execute(
    g: PropertyGraph,
    statement: ast.Statement | str,
    parameters: dict | None = None,
    import_dir: str | None = None,
) -> RowSet:
    if isinstance(statement, str):
        statement = parse_statement(statement)
    context = _Context(g, parameters, import_dir)
    evaluator = _Evaluator(context)
    matcher = _Matcher(context, evaluator)

    rows: list[dict] = [{}]
    projected: list[tuple[dict, dict]] | None = None
    columns: list[str] = []
    distinct = False
    order_clause: ast.OrderByClause | None = None
    limit: int | None = None
    call_columns: list[str] = []

    for clause in statement.clauses:
        if isinstance(clause, ast.LoadCsvClause):
            rows = _run_load_csv(context, clause)
        elif isinstance(clause, ast.MatchClause):
            rows = _run_match(matcher, clause, rows)
        elif isinstance(clause, ast.WhereClause):
            rows = [r for r in rows if evaluator.truth(clause.condition, r)]
        elif isinstance(clause, ast.WithClause):
            names = [item.alias or print_expression(item.expression)
                     for item in clause.items]
            pairs = _project(evaluator, clause.items, rows)
            rows = [dict(zip(names, values.values())) for values, _ in pairs]
        elif isinstance(clause, ast.UnwindClause):
            rows = _run_unwind(evaluator, clause, rows)
        elif isinstance(clause, ast.CreateClause):
            rows = [_run_create(context, evaluator, clause, r) for r in rows]
        elif isinstance(clause, ast.SetClause):
            for r in rows:
                _run_set(context, evaluator, clause, r)
        elif isinstance(clause, ast.DeleteClause):
            _run_delete(context, clause, rows)
        elif isinstance(clause, ast.CreateIndexClause):
            g.create_property_index(clause.label, clause.key)
        elif isinstance(clause, ast.CallClause):
            rows, call_columns = _run_call(context, evaluator, clause, rows)
        elif isinstance(clause, ast.ReturnClause):
            columns = [item.alias or print_expression(item.expression)
                       for item in clause.items]
            projected = _project(evaluator, clause.items, rows)
            distinct = clause.distinct
        elif isinstance(clause, ast.OrderByClause):
            order_clause = clause
        elif isinstance(clause, ast.LimitClause):
            limit = clause.count

    if projected is None and call_columns:
        # standalone CALL without RETURN yields the procedure's columns
        columns = call_columns
        projected = [({c: r.get(c) for c in call_columns}, dict(r)) for r in rows]

    result = RowSet(columns=columns, rows=[], summary=context.summary)
    if projected is None:
        return result

    if order_clause is not None:
        projected = _order_rows(evaluator, order_clause, projected)
    if distinct:
        seen = set()
        unique = []
        for values, env in projected:
            key = tuple(_group_key(v) for v in values.values())
            if key not in seen:
                seen.add(key)
                unique.append((values, env))
        projected = unique
    if limit is not None:
        projected = projected[:limit]

    for values, _ in projected:
        result.rows.append(tuple(_snapshot(g, v) for v in values.values()))
    return result


def run_query(
    g: PropertyGraph,
    text: str,
    parameters: dict | None = None,
    import_dir: str | None = None,
) -> RowSet:
    return execute(g, parse_statement(text), parameters, import_dir)


def _run_load_csv(context: _Context, clause: ast.LoadCsvClause) -> list[dict]:
    from ..storage import load_csv

    path = context.resolve_file(clause.url)
    if not os.path.isfile(path):
        raise FileNotFound(path)
    return [{clause.variable: row} for row in load_csv(path)]


def _run_match(matcher: _Matcher, clause: ast.MatchClause, rows: list[dict]) -> list[dict]:
    for pattern in clause.patterns:
        next_rows = []
        for binding in rows:
            next_rows.extend(matcher.match_pattern(pattern, binding))
        rows = next_rows
    return rows


def _run_unwind(evaluator: _Evaluator, clause: ast.UnwindClause, rows: list[dict]) -> list[dict]:
    out = []
    for binding in rows:
        value = evaluator.value(clause.expression, binding)
        if value is None:
            continue
        elements = value if isinstance(value, list) else [value]
        for element in elements:
            next_binding = dict(binding)
            next_binding[clause.variable] = element
            out.append(next_binding)
    return out


def _run_create(
    context: _Context, evaluator: _Evaluator, clause: ast.CreateClause, binding: dict
) -> dict:
    g = context.g
    binding = dict(binding)
    for pattern in clause.patterns:
        if pattern.shortest:
            raise ExecError("cannot CREATE a shortestPath pattern")
        node_ids = []
        for node_pattern in pattern.nodes:
            if node_pattern.variable and node_pattern.variable in binding:
                bound = binding[node_pattern.variable]
                if not isinstance(bound, NodeRef):
                    raise TypeMismatch(f"{node_pattern.variable} is not a node")
                if node_pattern.label or node_pattern.properties:
                    raise ExecError(
                        "cannot redeclare a bound variable with labels or properties"
                    )
                node_ids.append(bound.id)
                continue
            props = {
                key: evaluator.value(value, binding)
                for key, value in node_pattern.properties
            }
            props = {k: v for k, v in props.items() if v is not None}
            labels = {node_pattern.label} if node_pattern.label else set()
            node_id = g.add_node(labels, props)
            context.summary.nodes_created += 1
            context.summary.properties_set += len(props)
            if node_pattern.variable:
                binding[node_pattern.variable] = NodeRef(node_id)
            node_ids.append(node_id)
        for rel, source_id, target_id in zip(pattern.rels, node_ids, node_ids[1:]):
            if rel.direction == "both":
                raise ExecError("CREATE needs a directed relationship pattern")
            if rel.type is None:
                raise ExecError("CREATE needs a relationship type")
            a, b = (source_id, target_id) if rel.direction == "out" else (target_id, source_id)
            props = {key: evaluator.value(value, binding) for key, value in rel.properties}
            props = {k: v for k, v in props.items() if v is not None}
            existing = g.find_edge(a, b, rel.type)
            edge_id = g.add_edge(a, b, rel.type, props)
            if existing is None:
                context.summary.relationships_created += 1
            context.summary.properties_set += len(props)
            if rel.variable:
                binding[rel.variable] = EdgeRef(edge_id)
    return binding


def _run_set(
    context: _Context, evaluator: _Evaluator, clause: ast.SetClause, binding: dict
) -> None:
    g = context.g
    for variable, key, value_expr in clause.assignments:
        target = binding.get(variable)
        value = evaluator.value(value_expr, binding)
        if isinstance(target, NodeRef):
            if target.id in g.nodes:
                context.summary.properties_set += g.set_node_properties(
                    target.id, {key: value}
                )
        elif isinstance(target, EdgeRef):
            if target.id in g.edges:
                context.summary.properties_set += g.set_edge_properties(
                    target.id, {key: value}
                )
        else:
            raise TypeMismatch(f"SET target {variable} is not a node or relationship")


def _run_delete(context: _Context, clause: ast.DeleteClause, rows: list[dict]) -> None:
    g = context.g
    for binding in rows:
        for variable in clause.variables:
            target = binding.get(variable)
            if target is None:
                continue
            if isinstance(target, NodeRef):
                if target.id not in g.nodes:
                    continue
                removed = g.remove_node(target.id, detach=clause.detach)
                context.summary.nodes_deleted += 1
                context.summary.relationships_deleted += removed
            elif isinstance(target, EdgeRef):
                edge = g.edges.get(target.id)
                if edge is None:
                    continue
                g.remove_edge(edge.source, edge.target, edge.type)
                context.summary.relationships_deleted += 1
            else:
                raise TypeMismatch(f"cannot DELETE {variable}")


def _run_call(
    context: _Context, evaluator: _Evaluator, clause: ast.CallClause, rows: list[dict]
) -> tuple[list[dict], list[str]]:
    from .procedures import invoke_procedure

    out_rows: list[dict] = []
    out_columns: list[str] = []
    for binding in rows:
        columns, yielded = invoke_procedure(context, evaluator, clause, binding)
        if clause.yields:
            unknown = [y for y in clause.yields if y not in columns]
            if unknown:
                raise BadArguments(
                    f"{clause.procedure} does not yield {', '.join(unknown)}"
                )
            projected_columns = list(clause.yields)
        else:
            projected_columns = columns
        out_columns = projected_columns
        for row in yielded:
            next_binding = dict(binding)
            for name in projected_columns:
                next_binding[name] = row[name]
            out_rows.append(next_binding)
    return out_rows, out_columns


def _order_rows(
    evaluator: _Evaluator, clause: ast.OrderByClause, projected: list[tuple[dict, dict]]
) -> list[tuple[dict, dict]]:
    import functools

    keyed = []
    for values, env in projected:
        keyed.append((evaluator.value(clause.expression, env), values, env))

    non_null = [entry for entry in keyed if entry[0] is not None]
    nulls = [entry for entry in keyed if entry[0] is None]

    def compare(a, b):
        cmp = try_compare(a[0], b[0])
        if cmp is None:
            raise TypeMismatch(
                f"cannot order {type(a[0]).__name__} against {type(b[0]).__name__}"
            )
        return -cmp if clause.descending else cmp

    non_null.sort(key=functools.cmp_to_key(compare))
    return [(values, env) for _, values, env in non_null + nulls]
