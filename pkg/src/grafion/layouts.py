"""Deterministic 2-D node layouts: circular, spectral, and spring.

Layouts emit coordinate data for external renderers; nothing here draws
pixels. Every function is reproducible bit-for-bit from its inputs, and
final coordinates always land inside the [-1, 1] x [-1, 1] box.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .errors import EmptyGraph
from .graph import PropertyGraph

LayoutMap = dict[int, tuple[float, float]]


def _fit_box(points: np.ndarray) -> np.ndarray:
    """Center on the bounding box and uniformly scale into [-1, 1]^2.

    The scale factor is shared by both axes (aspect preserved) and never
    enlarges, so layouts already inside the box keep their shape.
    """
    if len(points) == 0:
        return points
    low = points.min(axis=0)
    high = points.max(axis=0)
    centered = points - (low + high) / 2.0
    extent = float(np.abs(centered).max())
    if extent > 1.0:
        centered /= extent
    return centered


def circular_layout(g: PropertyGraph) -> LayoutMap:
    """Ascending-id rank i of n sits at angle 2*pi*i/n on the unit circle."""
    nodes = g.node_ids()
    if not nodes:
        raise EmptyGraph("circular_layout")
    n = len(nodes)
    return {
        node: (math.cos(2.0 * math.pi * i / n), math.sin(2.0 * math.pi * i / n))
        for i, node in enumerate(nodes)
    }


def spectral_layout(g: PropertyGraph) -> LayoutMap:
    """Coordinates from the Laplacian eigenvectors of the two smallest
    nonzero eigenvalues.

    The Laplacian is L = D - A over the undirected view of the graph.
    Each eigenvector's sign is fixed so its first nonzero component is
    positive; graphs with fewer than 3 nodes (or no usable eigenpairs)
    fall back to the circular layout.
    """
    nodes = g.node_ids()
    if not nodes:
        raise EmptyGraph("spectral_layout")
    if len(nodes) < 3:
        return circular_layout(g)
    vectors = _laplacian_axes(g)
    if vectors is None:
        return circular_layout(g)
    points = _fit_box(np.column_stack(vectors))
    return {node: (float(points[i, 0]), float(points[i, 1])) for i, node in enumerate(nodes)}


def _laplacian_axes(g: PropertyGraph) -> list[np.ndarray] | None:
    a = g.adjacency_matrix()
    a = np.maximum(a, a.T)  # directed input uses the undirected view
    np.fill_diagonal(a, 0.0)
    laplacian = np.diag(a.sum(axis=1)) - a
    eigenvalues, eigenvectors = np.linalg.eigh(laplacian)
    axes = []
    for idx in range(len(eigenvalues)):
        if eigenvalues[idx] <= 1e-9:  # zero multiplicity = component count
            continue
        vec = eigenvectors[:, idx].copy()
        for component in vec:
            if abs(component) > 1e-12:
                if component < 0:
                    vec = -vec
                break
        axes.append(vec)
        if len(axes) == 2:
            return axes
    return None


def spring_layout(
    g: PropertyGraph,
    iterations: int = 50,
    seed: int = 0,
    displacement_log: list[float] | None = None,
) -> LayoutMap:
    """Fruchterman-Reingold force layout.

    Initial positions come from a seeded uniform RNG over [-1, 1]^2.
    With k = sqrt(area/n) for area 4, every node pair repels with k^2/d
    and every edge attracts with d^2/k; per-iteration displacement is
    capped by a temperature cooling linearly from 0.1 toward 0.

    When a list is passed as displacement_log, the total displacement of
    each iteration is appended to it (diagnostic only).
    """
    nodes = g.node_ids()
    if not nodes:
        raise EmptyGraph("spring_layout")
    n = len(nodes)
    rng = random.Random(seed)
    pos = np.array([[rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)] for _ in nodes])
    if n == 1:
        return {nodes[0]: (float(pos[0, 0]), float(pos[0, 1]))}

    rank = {node: i for i, node in enumerate(nodes)}
    edge_pairs = sorted(
        {(min(rank[e.source], rank[e.target]), max(rank[e.source], rank[e.target]))
         for e in g.edges.values() if e.source != e.target}
    )
    k = math.sqrt(4.0 / n)
    start_temp = 0.1
    for step in range(iterations):
        temp = start_temp * (1.0 - step / iterations)
        disp = np.zeros_like(pos)
        for i in range(n):  # pairwise repulsion, fixed summation order
            for j in range(i + 1, n):
                delta = pos[i] - pos[j]
                dist = max(math.hypot(delta[0], delta[1]), 1e-9)
                push = (k * k / dist) * (delta / dist)
                disp[i] += push
                disp[j] -= push
        for i, j in edge_pairs:  # spring attraction along edges
            delta = pos[i] - pos[j]
            dist = max(math.hypot(delta[0], delta[1]), 1e-9)
            pull = (dist * dist / k) * (delta / dist)
            disp[i] -= pull
            disp[j] += pull
        lengths = np.maximum(np.hypot(disp[:, 0], disp[:, 1]), 1e-12)
        capped = np.minimum(lengths, temp)
        pos = pos + disp / lengths[:, None] * capped[:, None]
        if displacement_log is not None:
            displacement_log.append(float(capped.sum()))

    pos = _fit_box(pos)
    return {node: (float(pos[rank[node], 0]), float(pos[rank[node], 1])) for node in nodes}
