"""The four node-centrality measures.

Degree and closeness default to the normalized convention, betweenness
to the raw pair-fraction sum; each takes a mode flag so either reading
of the usual formulas is reproducible.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..errors import EmptyGraph, GraphTooSmall, NoConvergence
from ..graph import PropertyGraph

RAW = "raw"
NORMALIZED = "normalized"


def _check_mode(mode: str) -> None:
    if mode not in (RAW, NORMALIZED):
        raise ValueError(f"mode must be 'raw' or 'normalized', got {mode!r}")


def degree_centrality(g: PropertyGraph, mode: str = NORMALIZED) -> dict[int, float]:
    _check_mode(mode)
    n = g.node_count()
    if mode == NORMALIZED and n < 2:
        raise GraphTooSmall(2, n)
    scores = {}
    for node_id in g.node_ids():
        deg = g.degree(node_id, "all")
        scores[node_id] = deg / (n - 1) if mode == NORMALIZED else float(deg)
    return scores


def _hop_distances(g: PropertyGraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for neighbor in g.neighbors(node, "out"):
            if neighbor not in dist:
                dist[neighbor] = dist[node] + 1
                queue.append(neighbor)
    return dist


def closeness_centrality(g: PropertyGraph, mode: str = NORMALIZED) -> dict[int, float]:
    """Reciprocal distance sum over each node's reachable set.

    Raw mode is 1/sum(d); normalized mode applies the reachable-fraction
    correction (r-1)/(n-1) * (r-1)/sum(d), which reduces to
    (n-1)/sum(d) on connected graphs. Nodes reaching nothing score 0.
    """
    _check_mode(mode)
    n = g.node_count()
    scores = {}
    for node_id in g.node_ids():
        dist = _hop_distances(g, node_id)
        reachable = len(dist) - 1
        total = sum(dist.values())
        if reachable == 0 or total == 0:
            scores[node_id] = 0.0
        elif mode == RAW:
            scores[node_id] = 1.0 / total
        else:
            scores[node_id] = (reachable / (n - 1)) * (reachable / total) if n > 1 else 0.0
    return scores


def betweenness_centrality(g: PropertyGraph, mode: str = RAW) -> dict[int, float]:
    """Brandes accumulation of shortest-path pair fractions.

    Raw mode sums sigma_st(v)/sigma_st over unordered pairs for
    undirected graphs and ordered pairs for directed ones; normalized
    divides by (n-1)(n-2)/2, respectively (n-1)(n-2).
    """
    _check_mode(mode)
    nodes = g.node_ids()
    scores = {v: 0.0 for v in nodes}
    for s in nodes:
        # single-source shortest-path DAG (unweighted)
        stack: list[int] = []
        preds: dict[int, list[int]] = {v: [] for v in nodes}
        sigma = {v: 0.0 for v in nodes}
        sigma[s] = 1.0
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in g.neighbors(v, "out"):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in nodes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                scores[w] += delta[w]
    n = len(nodes)
    if not g.directed:
        for v in scores:
            scores[v] /= 2.0
    if mode == NORMALIZED:
        pairs = (n - 1) * (n - 2) / 2.0 if not g.directed else float((n - 1) * (n - 2))
        if pairs > 0:
            for v in scores:
                scores[v] /= pairs
    return scores


def eigenvector_centrality(
    g: PropertyGraph,
    max_iter: int = 100,
    tol: float = 1e-6,
) -> dict[int, float]:
    """Power iteration on the adjacency matrix from a uniform start.

    Each iterate is L2-normalized; convergence is an L1 change below
    tol between successive normalized iterates. Directed graphs score a
    node by its in-neighbors.
    """
    if g.edge_count() == 0:
        raise EmptyGraph("eigenvector_centrality")
    nodes = g.node_ids()
    a = g.adjacency_matrix()
    x = np.full(len(nodes), 1.0 / len(nodes))
    for _ in range(max_iter):
        # the +x self term shifts the spectrum by 1 so bipartite graphs
        # cannot oscillate; eigenvectors are unchanged
        nxt = a.T @ x + x
        norm = np.linalg.norm(nxt)
        if norm == 0.0:
            raise NoConvergence("eigenvector_centrality", max_iter)
        nxt /= norm
        if np.abs(nxt - x).sum() < tol:
            return {node: float(nxt[i]) for i, node in enumerate(nodes)}
        x = nxt
    raise NoConvergence("eigenvector_centrality", max_iter)
