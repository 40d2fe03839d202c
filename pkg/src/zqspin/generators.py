"""Small graph families used by the tests, the benchmark and the CLI examples."""

from __future__ import annotations

import math

import numpy as np

from .graph import OrientedGraph, embedding_from_coordinates


def single_vertex() -> OrientedGraph:
    return OrientedGraph(1, ())


def path_graph(num_edges: int) -> OrientedGraph:
    """Path 0-1-...-N with edge i pointing from i to i+1 (head i+1)."""
    g = OrientedGraph(num_edges + 1, tuple((i + 1, i) for i in range(num_edges)))
    return embedding_from_coordinates(g, [(float(i), 0.0) for i in range(num_edges + 1)]) if num_edges else g


def cycle_graph(num_edges: int) -> OrientedGraph:
    """Coherently oriented cycle: edge i has tail i and head i+1 mod N."""
    n = num_edges
    g = OrientedGraph(n, tuple(((i + 1) % n, i) for i in range(n)))
    if n >= 3:
        coords = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
        g = embedding_from_coordinates(g, coords)
    return g


def triangle() -> OrientedGraph:
    """Edges 0->1, 1->2, 2->0 (given as (head, tail))."""
    g = OrientedGraph(3, ((1, 0), (2, 1), (0, 2)))
    return embedding_from_coordinates(g, [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])


def single_edge() -> OrientedGraph:
    """One edge with head 0 and tail 1."""
    return OrientedGraph(2, ((0, 1),), (((0, "head"),), ((0, "tail"),)))


def star_graph(leaves: int) -> OrientedGraph:
    g = OrientedGraph(leaves + 1, tuple((i + 1, 0) for i in range(leaves)))
    coords = [(0.0, 0.0)] + [
        (math.cos(2 * math.pi * i / leaves), math.sin(2 * math.pi * i / leaves)) for i in range(leaves)
    ]
    return embedding_from_coordinates(g, coords)


def grid_graph(rows: int, cols: int, embed: bool = True) -> OrientedGraph:
    """rows x cols vertices (open boundary); horizontal edges first, then vertical."""
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = [(idx(r, c + 1), idx(r, c)) for r in range(rows) for c in range(cols - 1)]
    edges += [(idx(r + 1, c), idx(r, c)) for r in range(rows - 1) for c in range(cols)]
    g = OrientedGraph(rows * cols, tuple(edges))
    if embed and edges:
        g = embedding_from_coordinates(g, [(float(c), float(r)) for r in range(rows) for c in range(cols)])
    return g


def complete_graph(n: int) -> OrientedGraph:
    return OrientedGraph(n, tuple((j, i) for i in range(n) for j in range(i + 1, n)))


def cube_graph() -> OrientedGraph:
    """3-cube, embedded as an inner square inside an outer square."""
    outer = [(-2.0, -2.0), (2.0, -2.0), (2.0, 2.0), (-2.0, 2.0)]
    inner = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
    edges = [((i + 1) % 4, i) for i in range(4)]
    edges += [(4 + (i + 1) % 4, 4 + i) for i in range(4)]
    edges += [(4 + i, i) for i in range(4)]
    return embedding_from_coordinates(OrientedGraph(8, tuple(edges)), outer + inner)


def disjoint_union(a: OrientedGraph, b: OrientedGraph) -> OrientedGraph:
    shift = a.n
    return OrientedGraph(a.n + b.n, a.edges + tuple((h + shift, t + shift) for h, t in b.edges))


def random_connected_multigraph(rng: np.random.Generator, n: int, num_edges: int, loops: bool = True) -> OrientedGraph:
    """Random spanning tree plus extra random edges (parallels and loops allowed)."""
    if num_edges < n - 1:
        raise ValueError("need at least n - 1 edges for a connected graph")
    edges = []
    for v in range(1, n):
        u = int(rng.integers(v))
        edges.append((v, u) if rng.random() < 0.5 else (u, v))
    while len(edges) < num_edges:
        h, t = (int(x) for x in rng.integers(n, size=2))
        if h == t and not loops:
            continue
        edges.append((h, t))
    perm = rng.permutation(len(edges))
    return OrientedGraph(n, tuple(edges[i] for i in perm))


def random_tree(rng: np.random.Generator, n: int) -> OrientedGraph:
    return random_connected_multigraph(rng, n, n - 1)
