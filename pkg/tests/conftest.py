"""Shared test helpers: seeded random graphs and an independent distance oracle."""

from __future__ import annotations

import random

import networkx as nx
import numpy as np

from edgedim.graphs import DistanceMatrix, Graph


def random_connected_graph(rng: random.Random, n: int, extra_edges: int = 0) -> Graph:
    """Random spanning tree plus `extra_edges` random non-parallel edges."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    attempts = 0
    while len(edges) < n - 1 + extra_edges and attempts < 50 * (extra_edges + 1):
        u, v = rng.randrange(n), rng.randrange(n)
        attempts += 1
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_apsp(g: Graph) -> DistanceMatrix:
    """Independent all-pairs oracle via networkx."""
    lengths = dict(nx.all_pairs_shortest_path_length(to_networkx(g)))
    out = np.zeros((g.n, g.n), dtype=np.int32)
    for u, row in lengths.items():
        for v, dist in row.items():
            out[u, v] = dist
    return DistanceMatrix(g.n, out)


def nonadjacent_pair(rng: random.Random, g: Graph, d: DistanceMatrix) -> tuple[int, int] | None:
    """A random vertex pair at distance >= 2, or None if the graph is complete."""
    candidates = np.argwhere(d.dist >= 2)
    if candidates.size == 0:
        return None
    u, v = candidates[rng.randrange(len(candidates))]
    return int(u), int(v)


def random_canonical_config(rng: random.Random, nmax: int = 20, nmin: int = 7, square: bool = False):
    """Assumption-1+2 satisfying grid config with room for Gain' >= 2."""
    from edgedim.grid2d import GridEdgeConfig

    while True:
        n = rng.randrange(nmin, nmax + 1)
        m = n if square else rng.randrange(nmin, nmax + 1)
        dx = rng.randrange(1, max(2, (n - 3) // 2))
        dy_min = dx + 3
        if dy_min > m - 3:
            continue
        dy = rng.randrange(dy_min, m - 2)
        xf = rng.randrange(2, n - dx)
        ye = rng.randrange(2, m - dy)
        return GridEdgeConfig(n, m, (xf + dx, ye), (xf, ye + dy))
