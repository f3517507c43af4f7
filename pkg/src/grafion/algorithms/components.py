"""Connected components and the canonical partition form."""

from __future__ import annotations

from collections import deque

from ..errors import DirectedInput
from ..graph import PropertyGraph


def canonical_partition(mapping: dict[int, int]) -> dict[int, int]:
    """Renumber community ids to 0..k-1 ordered by smallest member id."""
    groups: dict[int, list[int]] = {}
    for node, community in mapping.items():
        groups.setdefault(community, []).append(node)
    ordered = sorted(groups.values(), key=min)
    out = {}
    for new_id, members in enumerate(ordered):
        for node in members:
            out[node] = new_id
    return out


def _undirected_components(g: PropertyGraph) -> list[set[int]]:
    seen: set[int] = set()
    components = []
    for start in g.node_ids():
        if start in seen:
            continue
        component = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            node = queue.popleft()
            for edge in g.out_edges(node) + (g.in_edges(node) if g.directed else []):
                other = edge.target if edge.source == node else edge.source
                if other not in seen:
                    seen.add(other)
                    component.add(other)
                    queue.append(other)
        components.append(component)
    return sorted(components, key=min)


def connected_components(g: PropertyGraph) -> list[set[int]]:
    """Maximal connected node sets, ordered by smallest member id."""
    if g.directed:
        raise DirectedInput("connected_components")
    return _undirected_components(g)


def weakly_connected_components(g: PropertyGraph) -> dict[int, int]:
    """Components with edge directions ignored, as a canonical partition."""
    mapping = {}
    for i, component in enumerate(_undirected_components(g)):
        for node in component:
            mapping[node] = i
    return canonical_partition(mapping)
