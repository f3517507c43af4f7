"""Subgraph extraction, filtering, sampling, and graph set operations.

Everything here is a pure function over immutable snapshots: inputs are
never mutated and outputs are fresh graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable

from .errors import KindMismatch, SampleTooLarge, UnknownEdge, UnknownNode
from .graph import EdgeRecord, NodeRecord, PropertyGraph
from .values import try_compare

_OPS = {"=", "<>", "<", ">", "<=", ">="}


@dataclass(frozen=True)
class DegreePredicate:
    """Keeps nodes whose degree meets a lower bound."""

    minimum: int
    direction: str = "all"

    def matches(self, g: PropertyGraph, node_id: int) -> bool:
        return g.degree(node_id, self.direction) >= self.minimum


@dataclass(frozen=True)
class PropertyPredicate:
    """Compares one property against a constant.

    A missing key evaluates as `default` (None by default, which fails
    every comparison; pass 0 to mirror a get-with-zero-fallback filter).
    """

    key: str
    op: str
    value: Any
    default: Any = None

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")

    def _check(self, actual: Any) -> bool:
        if actual is None:
            actual = self.default
        cmp = try_compare(actual, self.value)
        if cmp is None:
            return False
        return {
            "=": cmp == 0,
            "<>": cmp != 0,
            "<": cmp < 0,
            ">": cmp > 0,
            "<=": cmp <= 0,
            ">=": cmp >= 0,
        }[self.op]

    def matches(self, g: PropertyGraph, node_id: int) -> bool:
        return self._check(g.nodes[node_id].properties.get(self.key))

    def matches_edge(self, g: PropertyGraph, edge_id: int) -> bool:
        return self._check(g.edges[edge_id].properties.get(self.key))


@dataclass(frozen=True)
class MemberPredicate:
    ids: frozenset[int]

    def matches(self, g: PropertyGraph, node_id: int) -> bool:
        return node_id in self.ids

    def matches_edge(self, g: PropertyGraph, edge_id: int) -> bool:
        return edge_id in self.ids


def filter_nodes(g: PropertyGraph, predicate) -> list[int]:
    """Live nodes satisfying the predicate, ascending order."""
    return [n for n in g.node_ids() if predicate.matches(g, n)]


def filter_edges(g: PropertyGraph, predicate) -> list[int]:
    """Live edges satisfying the predicate, ascending edge-id order."""
    return [e for e in g.edge_ids() if predicate.matches_edge(g, e)]


def sample_nodes(g: PropertyGraph, k: int, seed: int) -> set[int]:
    """Uniform sample of k nodes without replacement; seeded, reproducible."""
    n = g.node_count()
    if k < 0 or k > n:
        raise SampleTooLarge(k, n)
    rng = random.Random(seed)
    return set(rng.sample(g.node_ids(), k))


def _copy_node_into(dest: PropertyGraph, node: NodeRecord) -> None:
    dest.nodes[node.id] = NodeRecord(node.id, set(node.labels), dict(node.properties))
    dest._out[node.id] = []
    dest._in[node.id] = []


def _copy_edge_into(dest: PropertyGraph, edge: EdgeRecord) -> None:
    dest.edges[edge.id] = EdgeRecord(
        edge.id, edge.source, edge.target, edge.type, dict(edge.properties)
    )
    dest._edge_key[dest._key(edge.source, edge.target, edge.type)] = edge.id
    dest._out[edge.source].append(edge.id)
    dest._in[edge.target].append(edge.id)


def _seal(dest: PropertyGraph, like: PropertyGraph) -> PropertyGraph:
    dest._next_node_id = like._next_node_id
    dest._next_edge_id = like._next_edge_id
    return dest


def induced_subgraph(g: PropertyGraph, node_set: Iterable[int]) -> PropertyGraph:
    """Subgraph on the node set plus every edge with both endpoints inside."""
    keep = set(node_set)
    for node_id in keep:
        if not g.has_node(node_id):
            raise UnknownNode(node_id)
    sub = PropertyGraph(g.kind)
    for node_id in sorted(keep):
        _copy_node_into(sub, g.nodes[node_id])
    for edge_id in g.edge_ids():
        edge = g.edges[edge_id]
        if edge.source in keep and edge.target in keep:
            _copy_edge_into(sub, edge)
    return _seal(sub, g)


def edge_subgraph(g: PropertyGraph, edge_set: Iterable[int]) -> PropertyGraph:
    """Subgraph containing exactly those edges plus their endpoint nodes."""
    keep = set(edge_set)
    for edge_id in keep:
        if edge_id not in g.edges:
            raise UnknownEdge(f"id {edge_id}")
    nodes = set()
    for edge_id in keep:
        edge = g.edges[edge_id]
        nodes.add(edge.source)
        nodes.add(edge.target)
    sub = PropertyGraph(g.kind)
    for node_id in sorted(nodes):
        _copy_node_into(sub, g.nodes[node_id])
    for edge_id in sorted(keep):
        _copy_edge_into(sub, g.edges[edge_id])
    return _seal(sub, g)


# -- set operations ----------------------------------------------------------
#
# Cross-graph node identity is by canonical key: the `name` property when the
# node has one, the raw id otherwise.  This lets name-keyed and id-keyed
# graphs compose the same way.


def _canonical_key(node: NodeRecord):
    name = node.properties.get("name")
    if isinstance(name, str):
        return ("name", name)
    return ("id", node.id)


def _edge_key_of(g: PropertyGraph, edge: EdgeRecord, node_key) -> tuple:
    a = node_key[edge.source]
    b = node_key[edge.target]
    if g.kind == "undirected" and b < a:
        a, b = b, a
    return (a, b, edge.type)


def _check_kinds(g1: PropertyGraph, g2: PropertyGraph) -> None:
    if g1.kind != g2.kind:
        raise KindMismatch(g1.kind, g2.kind)


def union(g1: PropertyGraph, g2: PropertyGraph) -> PropertyGraph:
    """Nodes V1 ∪ V2 and edges E1 ∪ E2; g2's properties win per key."""
    _check_kinds(g1, g2)
    out = g1.copy()
    key1 = {n.id: _canonical_key(n) for n in g1.nodes.values()}
    by_key: dict = {}
    for node_id in g1.node_ids():  # smallest id wins a key collision
        by_key.setdefault(key1[node_id], node_id)
    mapping = {}  # g2 node id -> out node id
    for node_id in g2.node_ids():
        node = g2.nodes[node_id]
        key = _canonical_key(node)
        if key in by_key:
            dest = out.nodes[by_key[key]]
            dest.labels |= node.labels
            dest.properties.update(node.properties)
            mapping[node_id] = dest.id
        else:
            if node_id not in out.nodes:
                _copy_node_into(out, node)
                new_id = node_id
                out._next_node_id = max(out._next_node_id, node_id + 1)
            else:
                new_id = out.add_node(node.labels, node.properties)
            mapping[node_id] = new_id
            by_key[key] = new_id
    for edge_id in g2.edge_ids():
        edge = g2.edges[edge_id]
        out.add_edge(mapping[edge.source], mapping[edge.target], edge.type, edge.properties)
    return out


def intersection(g1: PropertyGraph, g2: PropertyGraph) -> PropertyGraph:
    """Nodes and edges common to both graphs, with g1's ids and properties."""
    _check_kinds(g1, g2)
    key1 = {n: _canonical_key(g1.nodes[n]) for n in g1.nodes}
    key2 = {n: _canonical_key(g2.nodes[n]) for n in g2.nodes}
    keys2 = set(key2.values())
    shared_nodes = {n for n, k in key1.items() if k in keys2}
    edge_keys2 = {_edge_key_of(g2, e, key2) for e in g2.edges.values()}
    out = PropertyGraph(g1.kind)
    for node_id in sorted(shared_nodes):
        _copy_node_into(out, g1.nodes[node_id])
    for edge_id in g1.edge_ids():
        edge = g1.edges[edge_id]
        if edge.source not in shared_nodes or edge.target not in shared_nodes:
            continue
        if _edge_key_of(g1, edge, key1) in edge_keys2:
            _copy_edge_into(out, edge)
    return _seal(out, g1)


def difference(g1: PropertyGraph, g2: PropertyGraph) -> PropertyGraph:
    """All of g1's nodes, keeping only edges absent from g2."""
    _check_kinds(g1, g2)
    key1 = {n: _canonical_key(g1.nodes[n]) for n in g1.nodes}
    key2 = {n: _canonical_key(g2.nodes[n]) for n in g2.nodes}
    edge_keys2 = {_edge_key_of(g2, e, key2) for e in g2.edges.values()}
    out = PropertyGraph(g1.kind)
    for node_id in g1.node_ids():
        _copy_node_into(out, g1.nodes[node_id])
    for edge_id in g1.edge_ids():
        edge = g1.edges[edge_id]
        if _edge_key_of(g1, edge, key1) not in edge_keys2:
            _copy_edge_into(out, edge)
    return _seal(out, g1)
