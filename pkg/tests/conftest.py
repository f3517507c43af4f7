import random

import pytest

from grafion.graph import PropertyGraph


def build(kind, edges, n_nodes=None):
    """Graph whose node ids are 0..max referenced (or n_nodes-1)."""
    g = PropertyGraph(kind)
    top = max([max(u, v) for u, v, *_ in edges], default=-1)
    if n_nodes is not None:
        top = max(top, n_nodes - 1)
    for _ in range(top + 1):
        g.add_node()
    for u, v, *rest in edges:
        props = {"weight": rest[0]} if rest else {}
        g.add_edge(u, v, "LINK", props)
    return g


def random_graph(rng: random.Random, max_nodes=10, kind="undirected", edge_prob=0.35):
    n = rng.randint(1, max_nodes)
    g = PropertyGraph(kind)
    for _ in range(n):
        g.add_node()
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if kind == "undirected" and u > v:
                continue
            if rng.random() < edge_prob:
                g.add_edge(u, v, "LINK")
    return g


@pytest.fixture
def social_network():
    """The five-person friendship fixture with ages, cities, closeness."""
    g = PropertyGraph("undirected")
    people = [
        ("Alice", 30, "New York"),
        ("Bob", 25, "Los Angeles"),
        ("Charlie", 35, "Chicago"),
        ("David", 28, "San Francisco"),
        ("Eve", 32, "Boston"),
    ]
    ids = {}
    for name, age, city in people:
        ids[name] = g.add_node({"Person"}, {"name": name, "age": age, "city": city})
    for a, b, closeness in [
        ("Alice", "Bob", 5),
        ("Alice", "Charlie", 4),
        ("Bob", "David", 3),
        ("Charlie", "Eve", 4),
        ("David", "Eve", 2),
    ]:
        g.add_edge(ids[a], ids[b], "FRIEND", {"closeness": closeness})
    return g, ids


@pytest.fixture
def two_triangles():
    """Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3."""
    return build(
        "undirected",
        [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)],
    )
