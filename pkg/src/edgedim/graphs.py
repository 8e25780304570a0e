"""Immutable simple graphs, the generators used throughout, and BFS all-pairs
shortest paths.

Vertex ids are always 0..n-1.  Grid vertices are ranked mixed-radix with
dimension 1 fastest, so on a 2-D grid with n columns the vertex at 1-based
coordinates (x, y) has id (y-1)*n + (x-1).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "DistanceMatrix",
    "DisconnectedGraphError",
    "EdgeListFormatError",
    "grid",
    "ring",
    "gstar",
    "add_edge",
    "apsp",
    "grid_apsp",
    "induced_subgraph",
    "grid_coord_to_id",
    "grid_id_to_coord",
    "format_edge_list",
    "parse_edge_list",
]


class DisconnectedGraphError(ValueError):
    """A connected graph was required; carries one unreachable pair."""

    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: no path between vertices {u} and {v}")
        self.pair = (u, v)


class EdgeListFormatError(ValueError):
    """Malformed edge-list text input."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with contiguous integer vertex ids.

    `adj` holds one sorted tuple of neighbor ids per vertex; it is symmetric,
    loop-free and duplicate-free by construction.  Instances are immutable and
    safe to share across threads.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an id outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        lab = tuple(labels) if labels is not None else None
        if lab is not None and len(lab) != n:
            raise ValueError("labels length must equal vertex count")
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), lab)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop distances of a connected graph (symmetric, zero diagonal)."""

    n: int
    dist: np.ndarray

    def __post_init__(self):
        if self.dist.shape != (self.n, self.n):
            raise ValueError("distance matrix shape does not match vertex count")
        self.dist.setflags(write=False)

    def __getitem__(self, key):
        return self.dist[key]


def grid(dims: Sequence[int]) -> Graph:
    """Cartesian product of paths with the given side lengths (all >= 1).

    Labels carry the 1-based coordinates, comma-joined.
    """
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("at least one dimension required")
    if any(d < 1 for d in dims):
        raise ValueError("side lengths must be >= 1")
    n = math.prod(dims)
    strides = [1] * len(dims)
    for i in range(1, len(dims)):
        strides[i] = strides[i - 1] * dims[i - 1]
    edges = []
    for vid in range(n):
        coord = grid_id_to_coord(dims, vid)
        for i, side in enumerate(dims):
            if coord[i] < side:
                edges.append((vid, vid + strides[i]))
    labels = tuple(",".join(str(c) for c in grid_id_to_coord(dims, v)) for v in range(n))
    return Graph.from_edges(n, edges, labels)


def grid_coord_to_id(dims: Sequence[int], coord: Sequence[int]) -> int:
    """Mixed-radix rank of a 1-based coordinate tuple, dimension 1 fastest."""
    vid = 0
    stride = 1
    for x, side in zip(coord, dims, strict=True):
        if not 1 <= x <= side:
            raise ValueError(f"coordinate {x} outside 1..{side}")
        vid += (x - 1) * stride
        stride *= side
    return vid


def grid_id_to_coord(dims: Sequence[int], vid: int) -> tuple[int, ...]:
    coord = []
    for side in dims:
        coord.append(vid % side + 1)
        vid //= side
    return tuple(coord)


def ring(n: int) -> Graph:
    """Cycle on n >= 3 vertices, ids 0..n-1 in cyclic order."""
    if n < 3:
        raise ValueError("ring needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gstar(n: int) -> tuple[Graph, int, int]:
    """The layered construction whose metric dimension explodes when the edge
    (E, F) is added.

    Levels: F alone, then ceil(log2 n) "bit" vertices, then three levels of
    n-1 column vertices, then E alone.  Bit vertex j is adjacent to level-1
    vertex i iff the j-th bit (MSB first, width ceil(log2 n)) of i is one.

    Id layout (documented for reproducibility): F = 0, bit vertices 1..W,
    then levels 1..3 each ascending in i, then E last.

    Returns (graph, id of E, id of F).
    """
    if n <= 1:
        raise ValueError("gstar needs n > 1")
    w = max(1, math.ceil(math.log2(n)))
    f_id = 0
    bit_id = lambda j: j  # j in 1..w
    lvl_id = lambda l, i: w + (l - 1) * (n - 1) + i  # l in 1..3, i in 1..n-1
    e_id = w + 3 * (n - 1) + 1

    edges = []
    labels = ["F"] + [f"bit{j}" for j in range(1, w + 1)]
    for l in (1, 2, 3):
        labels += [f"v{l}_{i}" for i in range(1, n)]
    labels.append("E")

    for j in range(1, w + 1):
        edges.append((f_id, bit_id(j)))
    for i in range(1, n):
        for j in range(1, w + 1):
            if (i >> (w - j)) & 1:
                edges.append((bit_id(j), lvl_id(1, i)))
        edges.append((lvl_id(1, i), lvl_id(2, i)))
        edges.append((lvl_id(2, i), lvl_id(3, i)))
        edges.append((lvl_id(3, i), e_id))
    return Graph.from_edges(e_id + 1, edges, labels), e_id, f_id


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """New graph with the extra edge (u, v); the input is untouched."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"edge ({u},{v}) has an id outside 0..{g.n - 1}")
    if u == v:
        raise ValueError("cannot add a self-loop")
    if g.has_edge(u, v):
        raise ValueError(f"edge ({u},{v}) already present")
    adj = list(g.adj)
    adj[u] = tuple(sorted(adj[u] + (v,)))
    adj[v] = tuple(sorted(adj[v] + (u,)))
    return Graph(g.n, tuple(adj), g.labels)


def apsp(g: Graph) -> DistanceMatrix:
    """Exact hop distances by one BFS per source; raises on disconnected input."""
    n = g.n
    if n == 0:
        raise ValueError("empty graph has no distance matrix")
    out = np.full((n, n), -1, dtype=np.int32)
    for src in range(n):
        row = out[src]
        row[src] = 0
        q = deque([src])
        while q:
            u = q.popleft()
            du = row[u]
            for v in g.adj[u]:
                if row[v] < 0:
                    row[v] = du + 1
                    q.append(v)
        if src == 0:
            missing = np.nonzero(row < 0)[0]
            if missing.size:
                raise DisconnectedGraphError(0, int(missing[0]))
    return DistanceMatrix(n, out)


def grid_apsp(dims: Sequence[int]) -> DistanceMatrix:
    """Grid distances via the coordinate closed form (sum of |coordinate gaps|).

    Equals apsp(grid(dims)) entrywise; vectorized so large sweeps skip BFS.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError("side lengths must be >= 1")
    n = math.prod(dims)
    total = np.zeros((n, n), dtype=np.int32)
    ids = np.arange(n)
    for side in dims:
        c = ids % side
        ids = ids // side
        total += np.abs(c[:, None] - c[None, :])
    return DistanceMatrix(n, total)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on `vertices` plus the old->new id map.

    New ids follow the sorted order of the old ids, so the inverse map is just
    the sorted vertex list.
    """
    old = sorted(set(vertices))
    if not old:
        raise ValueError("vertex set must be nonempty")
    if old[0] < 0 or old[-1] >= g.n:
        raise ValueError("vertex id out of range")
    old_to_new = {u: i for i, u in enumerate(old)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u in old
        for v in g.adj[u]
        if u < v and v in old_to_new
    ]
    labels = tuple(g.labels[u] for u in old) if g.labels is not None else None
    return Graph.from_edges(len(old), edges, labels), old_to_new


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    """Edge-list text: optional '#' comments, a `p <vertex_count>` line, then
    one `u v` pair per line (each undirected edge once)."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.append(f"p {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Inverse of format_edge_list; rejects out-of-range ids, duplicates, loops."""
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "p":
                raise EdgeListFormatError(f"line {lineno}: expected 'p <vertex_count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise EdgeListFormatError(f"line {lineno}: bad vertex count {parts[1]!r}")
            if n < 0:
                raise EdgeListFormatError(f"line {lineno}: negative vertex count")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(f"line {lineno}: non-integer vertex id")
        edges.append((u, v))
    if n is None:
        raise EdgeListFormatError("missing 'p <vertex_count>' line")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise EdgeListFormatError(str(exc)) from exc
