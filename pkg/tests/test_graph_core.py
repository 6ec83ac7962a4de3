import numpy as np
import pytest
from hypothesis import given, strategies as st

from drgnorton import (
    DiameterTooSmall,
    DisconnectedGraph,
    Graph,
    NotDistanceRegular,
    check_distance_regular,
    cycle_graph,
    distance_matrices,
    distance_matrix,
)
from oracles import bfs_distances, intersection_counts, petersen_kneser_edges


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(ValueError):
        Graph(2, np.array([[True, True], [True, False]]))
    with pytest.raises(ValueError):
        Graph(2, np.array([[False, True], [False, False]]))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])


def test_k2_distance_matrix():
    g = Graph.from_edges(2, [(0, 1)])
    dm = distance_matrix(g)
    assert dm.dist.tolist() == [[0, 1], [1, 0]]
    assert dm.d == 1


def test_c5_diameter():
    dm = distance_matrix(cycle_graph(5))
    assert dm.d == 2  # floor(5/2)
    assert dm.dist[0, 1] == 1


def test_petersen_distances_match_bfs_oracle():
    n, edges = petersen_kneser_edges()
    g = Graph.from_edges(n, edges)
    dm = distance_matrix(g)
    assert dm.dist.tolist() == bfs_distances(n, edges)
    assert dm.d == 2
    # every vertex has 6 vertices at distance 2
    assert all(int((dm.dist[x] == 2).sum()) == 6 for x in range(n))


def test_disconnected_graph_raises():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraph):
        distance_matrix(g)


def test_path3_not_distance_regular():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    dm = distance_matrix(g)
    with pytest.raises(NotDistanceRegular) as err:
        check_distance_regular(g, dm)
    h, i, j, x, y = err.value.witness
    # the path is not even regular, caught on the diagonal distance class
    assert h == 0 and (i, j) == (1, 1)
    assert err.value.expected != err.value.actual


def test_k4_diameter_too_small():
    g = Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    dm = distance_matrix(g)
    with pytest.raises(DiameterTooSmall):
        check_distance_regular(g, dm)


def test_petersen_intersection_numbers_against_set_oracle():
    n, edges = petersen_kneser_edges()
    g = Graph.from_edges(n, edges)
    dm = distance_matrix(g)
    idata = check_distance_regular(g, dm)
    oracle = intersection_counts(bfs_distances(n, edges))
    assert oracle is not None
    for (h, i, j), val in oracle.items():
        assert idata.p[h, i, j] == val
    assert idata.c[1:] == (1, 1)
    assert idata.b[:2] == (3, 2)
    assert idata.a == (0, 0, 2)
    assert idata.k == 3


def test_c6_intersection_array():
    g = cycle_graph(6)
    idata = check_distance_regular(g, distance_matrix(g))
    assert idata.d == 3
    assert idata.c[1:] == (1, 1, 2)
    assert idata.b[:3] == (2, 1, 1)
    assert idata.a == (0, 0, 0, 0)


def test_distance_matrices_basics():
    g = Graph.from_edges(2, [(0, 1)])
    A = distance_matrices(distance_matrix(g))
    assert np.array_equal(A[0], np.eye(2, dtype=np.int64))
    assert A[1].tolist() == [[0, 1], [1, 0]]


def test_distance_matrices_partition_all_ones(corpus):
    for bundle in corpus.values():
        A = distance_matrices(bundle.dm)
        assert np.array_equal(sum(A), np.ones((bundle.graph.n,) * 2, dtype=np.int64))
        assert np.array_equal(A[0], np.eye(bundle.graph.n, dtype=np.int64))


def test_petersen_a1_squared_matrix_oracle(petersen):
    A = distance_matrices(petersen.dm)
    lhs = A[1] @ A[1]
    assert np.array_equal(lhs, 3 * A[0] + 0 * A[1] + 1 * A[2])


def test_product_relation_exact_on_corpus(corpus):
    # A_i A_j = sum_h p[h,i,j] A_h in integer arithmetic, all i, j
    for bundle in corpus.values():
        A = distance_matrices(bundle.dm)
        d = bundle.idata.d
        for i in range(d + 1):
            for j in range(d + 1):
                rhs = sum(int(bundle.idata.p[h, i, j]) * A[h] for h in range(d + 1))
                assert np.array_equal(A[i] @ A[j], rhs), (i, j)


def test_row_sums_equal_sphere_sizes(corpus):
    for bundle in corpus.values():
        A = distance_matrices(bundle.dm)
        for i in range(bundle.idata.d + 1):
            sums = A[i].sum(axis=1)
            assert np.all(sums == int(bundle.idata.p[0, i, i]))


def test_tensor_symmetry_and_triangle_pattern(corpus):
    for bundle in corpus.values():
        p, d = bundle.idata.p, bundle.idata.d
        assert np.array_equal(p, p.transpose(0, 2, 1))
        for h in range(d + 1):
            for i in range(d + 1):
                for j in range(d + 1):
                    if h > i + j or i > h + j or j > h + i:
                        assert p[h, i, j] == 0
                    elif h == i + j or i == h + j or j == h + i:
                        assert p[h, i, j] != 0


@given(st.integers(min_value=5, max_value=24))
def test_cycle_triangle_inequality(n):
    dm = distance_matrix(cycle_graph(n))
    dist = dm.dist
    for x in range(n):
        for y in range(n):
            assert dist[x, y] == dist[y, x]
            # going through any z never beats the shortest path
            assert np.all(dist[x, y] <= dist[x] + dist[:, y])
    assert np.all(dist.diagonal() == 0)
    assert np.array_equal(dist == 1, np.asarray(cycle_graph(n).adjacency))
