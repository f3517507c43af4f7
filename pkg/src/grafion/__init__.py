"""grafion: an embedded property-graph engine.

Graph construction and mutation, a Cypher-modeled query language,
path/centrality/community algorithms, graph set operations,
deterministic layouts, CSV/JSON interchange, a line-protocol server,
and an interactive REPL.
"""

from .graph import PropertyGraph, create_graph, graphs_equal

__version__ = "0.1.0"

__all__ = ["PropertyGraph", "create_graph", "graphs_equal", "__version__"]
