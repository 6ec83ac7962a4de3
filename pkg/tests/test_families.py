import numpy as np
import pytest
from hypothesis import given, strategies as st

from drgnorton import (
    FamilySpec,
    InvalidFamilyParams,
    check_distance_regular,
    cycle_graph,
    distance_matrix,
    generate,
    hamming_graph,
    hypercube_graph,
    johnson_graph,
    petersen_graph,
)
from oracles import bfs_distances, intersection_counts, petersen_kneser_edges


def test_hamming_3_2_shape():
    g = hamming_graph(3, 2)
    assert g.n == 8
    assert np.all(g.degree_sequence() == 3)
    dm = distance_matrix(g)
    assert dm.d == 3
    check_distance_regular(g, dm)


def test_johnson_5_2_valency():
    g = johnson_graph(5, 2)
    assert g.n == 10
    assert np.all(g.degree_sequence() == 6)  # k(n-k) = 2*3


def test_petersen_matches_kneser_oracle():
    g = petersen_graph()
    n, edges = petersen_kneser_edges()
    expected = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        expected[u, v] = expected[v, u] = True
    assert np.array_equal(np.asarray(g.adjacency), expected)


def test_cycle_4_rejected():
    with pytest.raises(InvalidFamilyParams):
        cycle_graph(4)
    with pytest.raises(InvalidFamilyParams):
        generate(FamilySpec("cycle", (4,)))


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("hamming", (1, 5)),
        FamilySpec("hamming", (3, 1)),
        FamilySpec("johnson", (3, 2)),   # n < 2k
        FamilySpec("johnson", (5, 1)),
        FamilySpec("nosuch", (1,)),
        FamilySpec("petersen", (5,)),    # wrong arity
        FamilySpec("cycle", ()),
    ],
)
def test_invalid_family_params(spec):
    with pytest.raises(InvalidFamilyParams):
        generate(spec)


def test_johnson_boundary_n_equals_2k():
    # J(4,2) is the octahedron, the smallest admissible Johnson graph
    g = generate(FamilySpec("johnson", (4, 2)))
    assert g.n == 6
    check_distance_regular(g, distance_matrix(g))


def test_vertex_cap():
    with pytest.raises(InvalidFamilyParams):
        hamming_graph(14, 2)  # 16384 vertices
    g = generate(FamilySpec("hamming", (14, 2)), max_vertices=20000)
    assert g.n == 16384


def test_hypercube_is_hamming_q2():
    assert np.array_equal(np.asarray(hypercube_graph(3).adjacency), np.asarray(hamming_graph(3, 2).adjacency))
    assert np.array_equal(np.asarray(generate(FamilySpec("hypercube", (4,))).adjacency),
                          np.asarray(generate(FamilySpec("hamming", (4, 2))).adjacency))


def test_generation_is_deterministic():
    for spec in [FamilySpec("johnson", (6, 3)), FamilySpec("hamming", (3, 3)), FamilySpec("petersen")]:
        a = generate(spec)
        b = generate(spec)
        assert np.array_equal(np.asarray(a.adjacency), np.asarray(b.adjacency))


def _assert_distance_regular(g):
    dm = distance_matrix(g)
    assert dm.d >= 2
    idata = check_distance_regular(g, dm)
    # cross-check a slice of the tensor against the set-based oracle
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(np.asarray(g.adjacency))))]
    oracle = intersection_counts(bfs_distances(g.n, edges))
    assert oracle is not None
    for (h, i, j), val in oracle.items():
        assert idata.p[h, i, j] == val


@given(st.integers(min_value=5, max_value=20))
def test_cycles_are_distance_regular(n):
    _assert_distance_regular(cycle_graph(n))


@given(st.integers(min_value=2, max_value=3), st.integers(min_value=2, max_value=3))
def test_hamming_graphs_are_distance_regular(d, q):
    _assert_distance_regular(hamming_graph(d, q))


@given(st.integers(min_value=2, max_value=3))
def test_johnson_graphs_are_distance_regular(k):
    _assert_distance_regular(johnson_graph(2 * k + 1, k))
