"""PageRank with optional edge weights.

Power iteration on PR(v) = (1-d)/N + d * sum over in-links of
PR(u)/out(u), starting uniform, with dangling mass redistributed
uniformly. The weighted variant replaces 1/out(u) by the edge's share
of u's total outgoing weight. Scores always sum to 1.
"""

from __future__ import annotations

from ..errors import BadDamping, NoConvergence
from ..graph import PropertyGraph
from .paths import edge_weight


def pagerank(
    g: PropertyGraph,
    damping: float = 0.85,
    weight: str | None = None,
    max_iter: int = 200,
    tol: float = 1e-9,
) -> dict[int, float]:
    # max_iter default of 200 leaves headroom over the ~130 iterations a
    # 0.85 contraction needs to push the L1 change under 1e-9
    if not (0.0 < damping < 1.0):
        raise BadDamping(damping)
    nodes = g.node_ids()
    n = len(nodes)
    if n == 0:
        return {}
    # out-links with weight shares; undirected edges count both ways
    out_links: dict[int, list[tuple[int, float]]] = {v: [] for v in nodes}
    for edge_id in g.edge_ids():
        edge = g.edges[edge_id]
        w = edge_weight(edge, weight)
        out_links[edge.source].append((edge.target, w))
        if not g.directed and edge.source != edge.target:
            out_links[edge.target].append((edge.source, w))
    out_total = {v: sum(w for _, w in links) for v, links in out_links.items()}
    # zero total outgoing weight is dangling even if zero-weight edges exist
    dangling = [v for v in nodes if out_total[v] <= 0.0]
    dangling_set = set(dangling)

    rank = {v: 1.0 / n for v in nodes}
    base = (1.0 - damping) / n
    for _ in range(max_iter):
        nxt = {v: base for v in nodes}
        dangling_mass = sum(rank[v] for v in dangling)
        spread = damping * dangling_mass / n
        for v in nodes:
            nxt[v] += spread
            if v in dangling_set:
                continue
            for target, w in out_links[v]:
                nxt[target] += damping * rank[v] * w / out_total[v]
        change = sum(abs(nxt[v] - rank[v]) for v in nodes)
        rank = nxt
        if change < tol:
            return rank
    raise NoConvergence("pagerank", max_iter)
