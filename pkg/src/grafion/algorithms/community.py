"""Louvain community detection and Newman modularity.

The Louvain loop is fully deterministic: phase 1 sweeps nodes in
ascending id and moves each to the neighbor community with the largest
positive modularity gain (ties to the smallest community id); phase 2
aggregates communities into super-nodes with self-loops and summed
weights. Phases alternate until the modularity gain drops below 1e-7.
"""

from __future__ import annotations

from ..errors import DirectedInput, EmptyGraph, IncompletePartition
from ..graph import PropertyGraph
from .components import canonical_partition
from .paths import edge_weight

_MIN_GAIN = 1e-7


def modularity(
    g: PropertyGraph,
    partition: dict[int, int],
    weight: str | None = None,
) -> float:
    """Q = (1/2m) * sum_ij [A_ij - k_i k_j / 2m] * delta(c_i, c_j).

    The weighted variant uses weighted degrees with 2m equal to twice
    the total edge weight. Self-loops contribute 2w to their node's
    degree and diagonal entry.
    """
    live = set(g.nodes)
    missing = live - set(partition)
    if missing:
        raise IncompletePartition(missing)
    if g.edge_count() == 0:
        raise EmptyGraph("modularity")

    two_m = 0.0
    degree: dict[int, float] = {v: 0.0 for v in live}
    intra = 0.0  # sum of A_ij over same-community ordered pairs
    for edge in g.edges.values():
        w = edge_weight(edge, weight)
        degree[edge.source] += w
        degree[edge.target] += w
        two_m += 2.0 * w
        if partition[edge.source] == partition[edge.target]:
            intra += 2.0 * w
    if two_m == 0.0:
        raise EmptyGraph("modularity")

    community_degree: dict[int, float] = {}
    for v in live:
        community_degree[partition[v]] = community_degree.get(partition[v], 0.0) + degree[v]
    q = intra / two_m
    for total in community_degree.values():
        q -= (total / two_m) ** 2
    return q


def _adjacency(g: PropertyGraph, weight: str | None) -> dict[int, dict[int, float]]:
    """Symmetric weighted adjacency; a self-loop stores 2w on the diagonal."""
    adj: dict[int, dict[int, float]] = {v: {} for v in g.node_ids()}
    for edge in g.edges.values():
        w = edge_weight(edge, weight)
        if edge.source == edge.target:
            adj[edge.source][edge.source] = adj[edge.source].get(edge.source, 0.0) + 2.0 * w
        else:
            adj[edge.source][edge.target] = adj[edge.source].get(edge.target, 0.0) + w
            adj[edge.target][edge.source] = adj[edge.target].get(edge.source, 0.0) + w
    return adj


def _one_level(adj: dict[int, dict[int, float]], two_m: float) -> dict[int, int]:
    """Phase 1: ascending-id sweeps until no single move improves Q."""
    community = {v: v for v in adj}
    k = {v: sum(neighbors.values()) for v, neighbors in adj.items()}
    sigma_tot = dict(k)  # community -> total incident degree

    moved = True
    while moved:
        moved = False
        for v in sorted(adj):
            current = community[v]
            # weight from v toward each neighboring community (self excluded)
            toward: dict[int, float] = {}
            for u, w in adj[v].items():
                if u != v:
                    c = community[u]
                    toward[c] = toward.get(c, 0.0) + w
            sigma_tot[current] -= k[v]
            best_c = current
            best_score = toward.get(current, 0.0) - sigma_tot[current] * k[v] / two_m
            # ascending candidate order + strict improvement = smallest id wins ties
            for c in sorted(toward):
                if c == current:
                    continue
                score = toward[c] - sigma_tot[c] * k[v] / two_m
                if score > best_score:
                    best_c, best_score = c, score
            sigma_tot[best_c] += k[v]
            if best_c != current:
                community[v] = best_c
                moved = True
    return community


def _aggregate(
    adj: dict[int, dict[int, float]], community: dict[int, int]
) -> tuple[dict[int, dict[int, float]], dict[int, int]]:
    """Phase 2: one super-node per community, weights summed."""
    renumber = canonical_partition(community)
    new_adj: dict[int, dict[int, float]] = {c: {} for c in set(renumber.values())}
    for v, neighbors in adj.items():
        cv = renumber[v]
        for u, w in neighbors.items():
            cu = renumber[u]
            new_adj[cv][cu] = new_adj[cv].get(cu, 0.0) + w
    return new_adj, renumber


def louvain(
    g: PropertyGraph,
    weight: str | None = None,
    quality_log: list[float] | None = None,
) -> tuple[dict[int, int], float]:
    """Greedy two-phase modularity maximization.

    Returns the canonical partition of the original nodes and its
    modularity as computed by the modularity op. When a list is passed
    as quality_log, the modularity after each phase pair is appended
    (diagnostic only; the sequence never decreases).
    """
    if g.directed:
        raise DirectedInput("louvain")
    if g.edge_count() == 0 or g.node_count() == 0:
        raise EmptyGraph("louvain")

    adj = _adjacency(g, weight)
    two_m = sum(sum(neighbors.values()) for neighbors in adj.values())
    membership = {v: v for v in g.node_ids()}  # original node -> super-node

    best_partition = canonical_partition(membership)
    best_q = modularity(g, best_partition, weight)
    if quality_log is not None:
        quality_log.append(best_q)
    while True:
        community = _one_level(adj, two_m)
        trial = canonical_partition({v: community[membership[v]] for v in membership})
        q = modularity(g, trial, weight)
        if q - best_q < _MIN_GAIN:
            break
        best_partition, best_q = trial, q
        if quality_log is not None:
            quality_log.append(best_q)
        adj, renumber = _aggregate(adj, community)
        membership = {v: renumber[community[membership[v]]] for v in membership}
    return best_partition, modularity(g, best_partition, weight)
