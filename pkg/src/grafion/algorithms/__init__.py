"""Graph algorithms: shortest paths, components, centrality, ranking, communities."""

from .paths import bfs_shortest_path, dijkstra, edge_weight
from .components import (
    canonical_partition,
    connected_components,
    weakly_connected_components,
)
from .centrality import (
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
)
from .pagerank import pagerank
from .community import louvain, modularity

__all__ = [
    "bfs_shortest_path",
    "dijkstra",
    "edge_weight",
    "connected_components",
    "weakly_connected_components",
    "canonical_partition",
    "degree_centrality",
    "closeness_centrality",
    "betweenness_centrality",
    "eigenvector_centrality",
    "pagerank",
    "louvain",
    "modularity",
]
