"""Shortest paths: Dijkstra over non-negative weights and minimum-hop BFS.

Both break cost ties toward the lexicographically smallest node-id
sequence, which keeps every printed path reproducible.
"""

from __future__ import annotations

import heapq
from collections import deque

from ..errors import NegativeWeight, NoPath
from ..graph import EdgeRecord, PropertyGraph


def edge_weight(edge: EdgeRecord, key: str | None) -> float:
    """Resolve an edge's weight: 1.0 when no key is given or the key is unset."""
    if key is None:
        return 1.0
    value = edge.properties.get(key)
    if value is None or isinstance(value, bool) or not isinstance(value, (int, float)):
        return 1.0
    return float(value)


def _expansions(g: PropertyGraph, node_id: int, ignore_direction: bool):
    """(neighbor, edge) pairs leaving node_id, deterministic order."""
    edges = list(g.out_edges(node_id))
    if ignore_direction and g.directed:
        edges += list(g.in_edges(node_id))
    out = []
    for edge in edges:
        other = edge.target if edge.source == node_id else edge.source
        out.append((other, edge))
    out.sort(key=lambda pair: (pair[0], pair[1].id))
    return out


def dijkstra(
    g: PropertyGraph,
    source: int,
    target: int,
    weight: str | None = None,
) -> tuple[list[int], float]:
    """Minimum-cost path from source to target.

    Returns (path, cost). Ties in cost resolve to the lexicographically
    smallest node sequence because the heap orders entries by
    (cost, path). Raises NegativeWeight before exploring a negative
    edge and NoPath when the target is unreachable.
    """
    g._require_node(source)
    g._require_node(target)
    if source == target:
        return [source], 0.0
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (source,))]
    done: set[int] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node == target:
            return list(path), cost
        for neighbor, edge in _expansions(g, node, ignore_direction=False):
            w = edge_weight(edge, weight)
            if w < 0:
                raise NegativeWeight(edge.id, w)
            if neighbor not in done:
                heapq.heappush(heap, (cost + w, path + (neighbor,)))
    raise NoPath(source, target)


def _bfs_distances(g: PropertyGraph, start: int, reverse: bool, ignore_direction: bool):
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if ignore_direction or not g.directed:
            edges = g.out_edges(node) + (g.in_edges(node) if g.directed else [])
        elif reverse:
            edges = g.in_edges(node)
        else:
            edges = g.out_edges(node)
        for edge in edges:
            other = edge.target if edge.source == node else edge.source
            if other not in dist:
                dist[other] = dist[node] + 1
                queue.append(other)
    return dist


def bfs_shortest_path(
    g: PropertyGraph,
    source: int,
    target: int,
    ignore_direction: bool = False,
) -> list[int]:
    """Minimum-hop path, tie-broken like dijkstra.

    Runs one BFS from each endpoint and then walks greedily: at every
    step take the smallest neighbor that stays on some shortest path.
    """
    g._require_node(source)
    g._require_node(target)
    if source == target:
        return [source]
    dist_s = _bfs_distances(g, source, reverse=False, ignore_direction=ignore_direction)
    dist_t = _bfs_distances(g, target, reverse=True, ignore_direction=ignore_direction)
    if target not in dist_s:
        raise NoPath(source, target)
    total = dist_s[target]
    path = [source]
    node = source
    while node != target:
        for neighbor, _ in _expansions(g, node, ignore_direction):
            if (
                dist_s.get(neighbor) == dist_s[node] + 1
                and neighbor in dist_t
                and dist_s[neighbor] + dist_t[neighbor] == total
            ):
                path.append(neighbor)
                node = neighbor
                break
        else:  # pragma: no cover - both BFS passes guarantee a step exists
            raise NoPath(source, target)
    return path
