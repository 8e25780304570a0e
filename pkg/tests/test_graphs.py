import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgedim.graphs import (
    DisconnectedGraphError,
    EdgeListFormatError,
    Graph,
    add_edge,
    apsp,
    format_edge_list,
    grid,
    grid_apsp,
    grid_coord_to_id,
    grid_id_to_coord,
    gstar,
    induced_subgraph,
    parse_edge_list,
    ring,
)

from conftest import nx_apsp, random_connected_graph


class TestGenerators:
    def test_grid_1d_is_path(self):
        g = grid([3])
        assert g.n == 3 and g.edge_count == 2
        assert g.adj[1] == (0, 2)

    def test_grid_2x2_is_4cycle(self):
        g = grid([2, 2])
        assert g.n == 4 and g.edge_count == 4
        assert all(g.degree(v) == 2 for v in range(4))

    def test_grid_3x3_counts(self):
        g = grid([3, 3])
        assert g.n == 9 and g.edge_count == 12  # m(n-1) + n(m-1)

    def test_grid_id_scheme_row_major(self):
        # 2-D id = (y-1)*n + (x-1), dimension 1 fastest
        dims = (4, 3)
        assert grid_coord_to_id(dims, (1, 1)) == 0
        assert grid_coord_to_id(dims, (4, 1)) == 3
        assert grid_coord_to_id(dims, (1, 2)) == 4
        assert grid_coord_to_id(dims, (2, 3)) == 9

    def test_grid_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            grid([])
        with pytest.raises(ValueError):
            grid([3, 0])

    def test_ring_triangle(self):
        assert ring(3).edge_count == 3

    def test_ring_degrees(self):
        assert all(ring(4).degree(v) == 2 for v in range(4))

    def test_ring_antipodal_distance(self):
        d = apsp(ring(6))
        assert d[0, 3] == 3

    def test_ring_too_small(self):
        with pytest.raises(ValueError):
            ring(2)

    @given(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=3))
    def test_grid_coord_roundtrip(self, dims):
        n = math.prod(dims)
        for vid in range(n):
            assert grid_coord_to_id(dims, grid_id_to_coord(dims, vid)) == vid


class TestGstar:
    def test_vertex_count_n8(self):
        g, _, _ = gstar(8)
        assert g.n == 26  # 3n + ceil(log2 n) - 1

    def test_smallest_instance(self):
        g, e_id, f_id = gstar(2)
        # one bit vertex, one vertex per level 1..3
        assert g.n == 6
        assert g.labels[f_id] == "F" and g.labels[e_id] == "E"
        assert sum(1 for l in g.labels if l.startswith("bit")) == 1
        for lvl in (1, 2, 3):
            assert sum(1 for l in g.labels if l.startswith(f"v{lvl}_")) == 1

    def test_bit_adjacency_of_column_one(self):
        # binary of 1 is 0..01, so v1_1 connects to the lowest-order bit vertex only
        g, _, _ = gstar(8)
        labels = {lab: i for i, lab in enumerate(g.labels)}
        nbrs = set(g.neighbors(labels["v1_1"]))
        bit_nbrs = {v for v in nbrs if g.labels[v].startswith("bit")}
        assert bit_nbrs == {labels["bit3"]}

    def test_level_distances_to_f(self):
        g, e_id, f_id = gstar(8)
        d = apsp(g)
        labels = {lab: i for i, lab in enumerate(g.labels)}
        for lvl in (1, 2, 3):
            for i in range(1, 8):
                assert d[labels[f"v{lvl}_{i}"], f_id] == lvl + 1
        assert d[e_id, f_id] == 5

    @pytest.mark.parametrize("n", range(2, 33))
    def test_counts_closed_forms(self, n):
        g, e_id, f_id = gstar(n)
        w = (n - 1).bit_length() if n > 1 else 1
        assert g.n == 3 * (n - 1) + w + 2
        popcounts = sum(bin(i).count("1") for i in range(1, n))
        assert g.edge_count == w + 3 * (n - 1) + popcounts
        assert f_id == 0 and e_id == g.n - 1

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            gstar(1)


class TestAddEdge:
    def test_path_to_triangle(self):
        g = add_edge(grid([3]), 0, 2)
        assert g.edge_count == 3

    def test_grid_corner_to_corner(self):
        g = grid([3, 3])
        g2 = add_edge(g, grid_coord_to_id((3, 3), (1, 1)), grid_coord_to_id((3, 3), (3, 3)))
        assert g2.edge_count == 13
        assert g.edge_count == 12  # input untouched

    def test_existing_edge_rejected(self):
        with pytest.raises(ValueError):
            add_edge(grid([3]), 0, 1)
        with pytest.raises(ValueError):
            add_edge(grid([3]), 1, 1)


class TestApsp:
    def test_grid_opposite_corners(self):
        d = apsp(grid([3, 3]))
        assert d[0, 8] == 4

    def test_disconnected_names_pair(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(DisconnectedGraphError) as exc:
            apsp(g)
        u, v = exc.value.pair
        assert d_reaches(g, u) != d_reaches(g, v)

    def test_matches_networkx_on_random_graphs(self):
        rng = random.Random(7)
        for _ in range(25):
            g = random_connected_graph(rng, rng.randrange(2, 30), rng.randrange(0, 10))
            assert np.array_equal(apsp(g).dist, nx_apsp(g).dist)

    def test_invariants_random(self):
        rng = random.Random(11)
        for _ in range(10):
            g = random_connected_graph(rng, rng.randrange(3, 40), 5)
            m = apsp(g).dist
            assert np.array_equal(m, m.T)
            assert np.all(np.diag(m) == 0)
            off = m + np.eye(g.n, dtype=np.int32)
            assert off.min() >= 1
            # triangle inequality over all triples
            assert np.all(m[:, None, :] <= m[:, :, None] + m[None, :, :])

    def test_grid_distance_is_manhattan(self):
        rng = random.Random(3)
        for _ in range(5):
            dims = tuple(rng.randrange(1, 5) for _ in range(rng.randrange(1, 4)))
            d = apsp(grid(dims))
            assert np.array_equal(d.dist, grid_apsp(dims).dist)
            n = math.prod(dims)
            for _ in range(20):
                u, v = rng.randrange(n), rng.randrange(n)
                cu, cv = grid_id_to_coord(dims, u), grid_id_to_coord(dims, v)
                assert d[u, v] == sum(abs(a - b) for a, b in zip(cu, cv))


def d_reaches(g: Graph, start: int) -> frozenset[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


class TestInducedSubgraph:
    def test_full_set_is_copy(self):
        g = grid([3, 3])
        sub, mapping = induced_subgraph(g, range(9))
        assert sub.n == 9 and sub.edge_count == 12
        assert mapping == {i: i for i in range(9)}

    def test_single_vertex(self):
        sub, _ = induced_subgraph(grid([3, 3]), [4])
        assert sub.n == 1 and sub.edge_count == 0

    def test_top_row_is_path(self):
        g = grid([3, 3])
        sub, _ = induced_subgraph(g, [0, 1, 2])
        assert sub.n == 3 and sub.edge_count == 2

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            induced_subgraph(grid([2, 2]), [])


class TestEdgeListFormat:
    def test_roundtrip_generators(self):
        for g in (grid([3, 3]), ring(7), gstar(5)[0]):
            g2 = parse_edge_list(format_edge_list(g, comment="hello\nworld"))
            assert g2.n == g.n and g2.adj == g.adj

    def test_rejects_out_of_range_ids(self):
        with pytest.raises(EdgeListFormatError):
            parse_edge_list("p 3\n0 3\n")

    def test_rejects_missing_header(self):
        with pytest.raises(EdgeListFormatError):
            parse_edge_list("0 1\n")

    def test_rejects_duplicate_edge(self):
        with pytest.raises(EdgeListFormatError):
            parse_edge_list("p 3\n0 1\n1 0\n")

    def test_comments_and_blanks_ignored(self):
        g = parse_edge_list("# a comment\n\np 2\n0 1\n")
        assert g.n == 2 and g.edge_count == 1

    @given(st.integers(min_value=2, max_value=20), st.integers(min_value=0, max_value=99))
    @settings(max_examples=30, deadline=None)
    def test_roundtrip_random(self, n, seed):
        g = random_connected_graph(random.Random(seed), n, 4)
        assert parse_edge_list(format_edge_list(g)).adj == g.adj
