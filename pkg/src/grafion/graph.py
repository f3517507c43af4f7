"""The property-graph data model.

A PropertyGraph is a directed or undirected graph of labeled nodes and
typed edges, each carrying a scalar property map.  Node and edge ids are
dense non-negative integers assigned by the store and never reused.
At most one edge may exist between an ordered node pair per type;
re-adding an existing (source, target, type) edge merges properties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

import numpy as np

from .errors import (
    GraphTooSmall,
    IndexExists,
    NodeHasEdges,
    UnknownEdge,
    UnknownNode,
)
from .values import check_properties, check_value, properties_equal, storage_key

DIRECTED = "directed"
UNDIRECTED = "undirected"


@dataclass
class NodeRecord:
    id: int
    labels: set[str]
    properties: dict[str, Any]


@dataclass
class EdgeRecord:
    id: int
    source: int
    target: int
    type: str
    properties: dict[str, Any]


@dataclass
class PropertyIndex:
    """Equality index over one (label, property key) pair.

    The mapping is keyed by storage identity, so integer 3 and float 3.0
    occupy separate buckets.  Contents always equal a full scan.
    """

    label: str
    key: str
    buckets: dict[tuple, set[int]] = field(default_factory=dict)

    def add(self, node_id: int, value: Any) -> None:
        self.buckets.setdefault(storage_key(value), set()).add(node_id)

    def remove(self, node_id: int, value: Any) -> None:
        bucket = self.buckets.get(storage_key(value))
        if bucket is not None:
            bucket.discard(node_id)
            if not bucket:
                del self.buckets[storage_key(value)]

    def lookup(self, value: Any) -> set[int]:
        return set(self.buckets.get(storage_key(value), ()))


class PropertyGraph:
    """In-memory property graph with adjacency lists and optional indexes."""

    def __init__(self, kind: str = UNDIRECTED):
        if kind not in (DIRECTED, UNDIRECTED):
            raise ValueError(f"kind must be 'directed' or 'undirected', got {kind!r}")
        self.kind = kind
        self.nodes: dict[int, NodeRecord] = {}
        self.edges: dict[int, EdgeRecord] = {}
        # per node: outgoing and incoming edge-id lists (an undirected
        # edge is stored once, on its source's out list and target's in list)
        self._out: dict[int, list[int]] = {}
        self._in: dict[int, list[int]] = {}
        # (source, target, type) -> edge id; undirected keys are canonicalized
        self._edge_key: dict[tuple[int, int, str], int] = {}
        self.indexes: dict[tuple[str, str], PropertyIndex] = {}
        self._next_node_id = 0
        self._next_edge_id = 0

    # -- identity -----------------------------------------------------------

    @property
    def directed(self) -> bool:
        return self.kind == DIRECTED

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return len(self.edges)

    def node_ids(self) -> list[int]:
        return sorted(self.nodes)

    def edge_ids(self) -> list[int]:
        return sorted(self.edges)

    def has_node(self, node_id: int) -> bool:
        return node_id in self.nodes

    def _require_node(self, node_id: int) -> NodeRecord:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def _key(self, source: int, target: int, type: str) -> tuple[int, int, str]:
        if self.kind == UNDIRECTED and source > target:
            source, target = target, source
        return (source, target, type)

    # -- mutation -----------------------------------------------------------

    def add_node(self, labels: Iterable[str] = (), properties: dict | None = None) -> int:
        labels = set(labels)
        for label in labels:
            if not isinstance(label, str) or not label:
                raise ValueError(f"labels must be nonempty text, got {label!r}")
        props = check_properties(dict(properties or {}))
        node_id = self._next_node_id
        self._next_node_id += 1
        self.nodes[node_id] = NodeRecord(node_id, labels, props)
        self._out[node_id] = []
        self._in[node_id] = []
        for index in self.indexes.values():
            if index.label in labels and index.key in props:
                index.add(node_id, props[index.key])
        return node_id

    def add_edge(self, source: int, target: int, type: str, properties: dict | None = None) -> int:
        self._require_node(source)
        self._require_node(target)
        if not isinstance(type, str) or not type:
            raise ValueError(f"edge type must be nonempty text, got {type!r}")
        props = check_properties(dict(properties or {}))
        key = self._key(source, target, type)
        existing = self._edge_key.get(key)
        if existing is not None:
            # same ordered pair and type: merge properties instead of erroring
            self.edges[existing].properties.update(props)
            return existing
        edge_id = self._next_edge_id
        self._next_edge_id += 1
        self.edges[edge_id] = EdgeRecord(edge_id, source, target, type, props)
        self._edge_key[key] = edge_id
        self._out[source].append(edge_id)
        self._in[target].append(edge_id)
        return edge_id

    def remove_node(self, node_id: int, detach: bool = False) -> int:
        self._require_node(node_id)
        incident = self.incident_edges(node_id)
        if incident and not detach:
            raise NodeHasEdges(node_id, len(incident))
        for edge_id in incident:
            self._drop_edge(edge_id)
        record = self.nodes.pop(node_id)
        del self._out[node_id]
        del self._in[node_id]
        for index in self.indexes.values():
            if index.label in record.labels and index.key in record.properties:
                index.remove(node_id, record.properties[index.key])
        return len(incident)

    def _drop_edge(self, edge_id: int) -> None:
        edge = self.edges.pop(edge_id)
        del self._edge_key[self._key(edge.source, edge.target, edge.type)]
        self._out[edge.source].remove(edge_id)
        self._in[edge.target].remove(edge_id)

    def remove_edge(self, source: int, target: int, type: str) -> None:
        edge_id = self._edge_key.get(self._key(source, target, type))
        if edge_id is None:
            raise UnknownEdge(f"({source})-[:{type}]->({target})")
        self._drop_edge(edge_id)

    def find_edge(self, source: int, target: int, type: str) -> EdgeRecord | None:
        edge_id = self._edge_key.get(self._key(source, target, type))
        return None if edge_id is None else self.edges[edge_id]

    def set_node_properties(self, node_id: int, updates: dict) -> int:
        """Overwrite or insert keys; a null value deletes the key.

        Returns the number of property writes (including removals).
        """
        node = self._require_node(node_id)
        writes = 0
        for key, value in updates.items():
            value = check_value(value)
            for index in self.indexes.values():
                if index.key == key and index.label in node.labels and key in node.properties:
                    index.remove(node_id, node.properties[key])
            if value is None:
                if node.properties.pop(key, None) is not None:
                    writes += 1
                continue
            node.properties[key] = value
            writes += 1
            for index in self.indexes.values():
                if index.key == key and index.label in node.labels:
                    index.add(node_id, value)
        return writes

    def set_edge_properties(self, edge_id: int, updates: dict) -> int:
        try:
            edge = self.edges[edge_id]
        except KeyError:
            raise UnknownEdge(f"id {edge_id}") from None
        writes = 0
        for key, value in updates.items():
            value = check_value(value)
            if value is None:
                if edge.properties.pop(key, None) is not None:
                    writes += 1
            else:
                edge.properties[key] = value
                writes += 1
        return writes

    # -- accessors ----------------------------------------------------------

    def incident_edges(self, node_id: int) -> list[int]:
        """All edge ids touching the node, each once, ascending."""
        self._require_node(node_id)
        return sorted(set(self._out[node_id]) | set(self._in[node_id]))

    def degree(self, node_id: int, direction: str = "all") -> int:
        self._require_node(node_id)
        if self.kind == UNDIRECTED:
            return len(self.incident_edges(node_id))
        if direction == "out":
            return len(self._out[node_id])
        if direction == "in":
            return len(self._in[node_id])
        if direction == "all":
            return len(self._out[node_id]) + len(self._in[node_id])
        raise ValueError(f"direction must be in/out/all, got {direction!r}")

    def neighbors(self, node_id: int, direction: str = "all") -> list[int]:
        """Neighbor node ids, ascending, no duplicates."""
        self._require_node(node_id)
        if direction not in ("in", "out", "all"):
            raise ValueError(f"direction must be in/out/all, got {direction!r}")
        if self.kind == UNDIRECTED:
            direction = "all"
        found = set()
        if direction in ("out", "all"):
            for edge_id in self._out[node_id]:
                found.add(self.edges[edge_id].target)
            if self.kind == UNDIRECTED:
                for edge_id in self._in[node_id]:
                    found.add(self.edges[edge_id].source)
        if direction in ("in", "all") and self.kind == DIRECTED:
            for edge_id in self._in[node_id]:
                found.add(self.edges[edge_id].source)
        return sorted(found)

    def out_edges(self, node_id: int) -> list[EdgeRecord]:
        """Edges leaving the node (directed) or incident to it (undirected)."""
        self._require_node(node_id)
        if self.kind == DIRECTED:
            ids = self._out[node_id]
        else:
            ids = set(self._out[node_id]) | set(self._in[node_id])
        return [self.edges[i] for i in sorted(ids)]

    def in_edges(self, node_id: int) -> list[EdgeRecord]:
        self._require_node(node_id)
        if self.kind == DIRECTED:
            ids = self._in[node_id]
        else:
            ids = set(self._out[node_id]) | set(self._in[node_id])
        return [self.edges[i] for i in sorted(ids)]

    def adjacency_matrix(self, weight: str | None = None) -> np.ndarray:
        """Dense matrix over nodes in ascending-id order.

        Entry (i, j) is the edge's `weight` property when a key is
        designated (1.0 if the key is absent on the edge), 1.0 for an
        unweighted edge, 0.0 otherwise.
        """
        order = self.node_ids()
        rank = {node_id: i for i, node_id in enumerate(order)}
        matrix = np.zeros((len(order), len(order)))
        for edge in self.edges.values():
            w = 1.0
            if weight is not None:
                value = edge.properties.get(weight)
                if isinstance(value, (int, float)) and not isinstance(value, bool):
                    w = float(value)
            i, j = rank[edge.source], rank[edge.target]
            matrix[i, j] = w
            if self.kind == UNDIRECTED:
                matrix[j, i] = w
        return matrix

    def density(self) -> float:
        n = self.node_count()
        if n < 2:
            raise GraphTooSmall(2, n)
        m = self.edge_count()
        if self.kind == UNDIRECTED:
            return 2.0 * m / (n * (n - 1))
        return m / (n * (n - 1))

    # -- indexes ------------------------------------------------------------

    def create_property_index(self, label: str, key: str) -> None:
        if (label, key) in self.indexes:
            raise IndexExists(label, key)
        index = PropertyIndex(label, key)
        for node in self.nodes.values():
            if label in node.labels and key in node.properties:
                index.add(node.id, node.properties[key])
        self.indexes[(label, key)] = index

    def find_nodes(self, label: str | None, key: str, value: Any) -> list[int]:
        """Equality lookup, via an index when one covers (label, key)."""
        if label is not None and (label, key) in self.indexes:
            return sorted(self.indexes[(label, key)].lookup(value))
        want = storage_key(value)
        out = []
        for node_id in self.node_ids():
            node = self.nodes[node_id]
            if label is not None and label not in node.labels:
                continue
            if key in node.properties and storage_key(node.properties[key]) == want:
                out.append(node_id)
        return out

    # -- copies and equality -------------------------------------------------

    def copy(self) -> "PropertyGraph":
        other = PropertyGraph(self.kind)
        other.nodes = {
            i: NodeRecord(n.id, set(n.labels), dict(n.properties))
            for i, n in self.nodes.items()
        }
        other.edges = {
            i: EdgeRecord(e.id, e.source, e.target, e.type, dict(e.properties))
            for i, e in self.edges.items()
        }
        other._out = {i: list(v) for i, v in self._out.items()}
        other._in = {i: list(v) for i, v in self._in.items()}
        other._edge_key = dict(self._edge_key)
        other.indexes = {
            k: PropertyIndex(v.label, v.key, {b: set(s) for b, s in v.buckets.items()})
            for k, v in self.indexes.items()
        }
        other._next_node_id = self._next_node_id
        other._next_edge_id = self._next_edge_id
        return other

    def as_undirected(self) -> "PropertyGraph":
        """Undirected copy with node and edge ids preserved where possible.

        Antiparallel same-type edge pairs collapse into one edge with
        merged properties.
        """
        if self.kind == UNDIRECTED:
            return self.copy()
        other = PropertyGraph(UNDIRECTED)
        for node_id in self.node_ids():
            node = self.nodes[node_id]
            other.nodes[node_id] = NodeRecord(node_id, set(node.labels), dict(node.properties))
            other._out[node_id] = []
            other._in[node_id] = []
        other._next_node_id = self._next_node_id
        for edge_id in self.edge_ids():
            edge = self.edges[edge_id]
            key = other._key(edge.source, edge.target, edge.type)
            existing = other._edge_key.get(key)
            if existing is not None:
                other.edges[existing].properties.update(edge.properties)
                continue
            other.edges[edge_id] = EdgeRecord(
                edge_id, edge.source, edge.target, edge.type, dict(edge.properties)
            )
            other._edge_key[key] = edge_id
            other._out[edge.source].append(edge_id)
            other._in[edge.target].append(edge_id)
        other._next_edge_id = self._next_edge_id
        return other

    def __repr__(self) -> str:
        return (
            f"PropertyGraph(kind={self.kind}, nodes={self.node_count()}, "
            f"edges={self.edge_count()})"
        )


def create_graph(kind: str = UNDIRECTED) -> PropertyGraph:
    return PropertyGraph(kind)


def graphs_equal(g1: PropertyGraph, g2: PropertyGraph) -> bool:
    """Structural equality: kind, ids, labels, properties, endpoints, types."""
    if g1.kind != g2.kind:
        return False
    if g1.nodes.keys() != g2.nodes.keys() or g1.edges.keys() != g2.edges.keys():
        return False
    for node_id, node in g1.nodes.items():
        other = g2.nodes[node_id]
        if node.labels != other.labels or not properties_equal(node.properties, other.properties):
            return False
    for edge_id, edge in g1.edges.items():
        other = g2.edges[edge_id]
        same_ends = (edge.source, edge.target) == (other.source, other.target)
        if g1.kind == UNDIRECTED and not same_ends:
            same_ends = (edge.source, edge.target) == (other.target, other.source)
        if not same_ends or edge.type != other.type:
            return False
        if not properties_equal(edge.properties, other.properties):
            return False
    return True


def iter_nodes(g: PropertyGraph) -> Iterator[NodeRecord]:
    for node_id in g.node_ids():
        yield g.nodes[node_id]


def iter_edges(g: PropertyGraph) -> Iterator[EdgeRecord]:
    for edge_id in g.edge_ids():
        yield g.edges[edge_id]
