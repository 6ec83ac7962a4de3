import numpy as np
import pytest

from drgnorton import (
    IdempotencyViolation,
    check_distance_regular,
    cycle_graph,
    distance_matrices,
    distance_matrix,
    eigenvalues,
    primitive_idempotents,
)
from drgnorton.spectral import (
    entrywise_span_residual,
    krein_reconstruction_residual,
    sample_pairs,
)
from oracles import cycle_eigenvalues

TOL = 1e-8


def test_petersen_eigenvalues_char_poly_oracle(petersen):
    # char poly of the 3x3 intersection matrix [[0,3,0],[1,0,2],[0,1,2]],
    # expanded by hand: x^3 - 2x^2 - 5x + 6
    roots = np.sort(np.roots([1.0, -2.0, -5.0, 6.0]))[::-1]
    np.testing.assert_allclose(roots, [3.0, 1.0, -2.0], atol=1e-9)
    np.testing.assert_allclose(petersen.decomp.theta, [3.0, 1.0, -2.0], atol=1e-9)
    assert petersen.decomp.theta[0] == 3.0


def test_c6_eigenvalues_cosine_oracle(c6):
    np.testing.assert_allclose(c6.decomp.theta, cycle_eigenvalues(6), atol=1e-9)
    np.testing.assert_allclose(c6.decomp.theta, [2.0, 1.0, -1.0, -2.0], atol=1e-9)


def test_theta0_is_valency_descending_rest(corpus):
    for bundle in corpus.values():
        theta = bundle.decomp.theta
        assert theta[0] == float(bundle.idata.k)
        assert all(theta[i] > theta[i + 1] for i in range(1, len(theta) - 1))


def test_e0_is_all_ones_over_n(corpus):
    for bundle in corpus.values():
        n = bundle.graph.n
        assert float(np.abs(bundle.decomp.E[0] - 1.0 / n).max()) < TOL


def test_resolution_of_identity(corpus):
    for bundle in corpus.values():
        n = bundle.graph.n
        assert float(np.abs(sum(bundle.decomp.E) - np.eye(n)).max()) < TOL


def test_orthogonal_idempotency(corpus):
    for bundle in corpus.values():
        E = bundle.decomp.E
        for i in range(len(E)):
            for j in range(len(E)):
                target = E[i] if i == j else 0.0
                assert float(np.abs(E[i] @ E[j] - target).max()) < TOL


def test_adjacency_reconstruction(corpus):
    for bundle in corpus.values():
        rebuilt = sum(t * Ei for t, Ei in zip(bundle.decomp.theta, bundle.decomp.E))
        assert float(np.abs(rebuilt - bundle.A).max()) < TOL


def test_petersen_multiplicities(petersen):
    np.testing.assert_allclose(petersen.decomp.mult, [1.0, 5.0, 4.0], atol=1e-9)


def test_multiplicities_are_integers_summing_to_n(corpus):
    for bundle in corpus.values():
        mult = bundle.decomp.mult
        assert all(abs(m - round(m)) < TOL for m in mult)
        assert round(sum(mult)) == bundle.graph.n


def test_idempotency_violation_on_wrong_eigenvalues(petersen):
    with pytest.raises(IdempotencyViolation):
        primitive_idempotents(petersen.A, np.array([3.0, 1.5, -2.0]))


def test_eigenvalues_accepts_only_intersection_data(c6):
    theta = eigenvalues(c6.idata)
    np.testing.assert_allclose(theta, [2.0, 1.0, -1.0, -2.0], atol=1e-9)


def test_krein_q0_slice_is_diagonal_multiplicities(corpus):
    # expanding the defining equation at h=0 with trace orthogonality gives
    # q[0,i,j] = delta_ij m_i
    for bundle in corpus.values():
        q, mult = bundle.kt.q, bundle.decomp.mult
        d = bundle.idata.d
        for i in range(d + 1):
            for j in range(d + 1):
                expected = mult[i] if i == j else 0.0
                assert abs(q[0, i, j] - expected) < TOL


def test_hypercube_q111_vanishes(cube):
    assert abs(cube.kt.q[1, 1, 1]) < 1e-10


def test_krein_symmetry_is_exact(corpus):
    for bundle in corpus.values():
        assert np.array_equal(bundle.kt.q, bundle.kt.q.transpose(0, 2, 1))


def test_krein_nonnegative(corpus):
    for bundle in corpus.values():
        assert float(bundle.kt.q.min()) >= -TOL
        bundle.kt.validate(TOL)


def test_krein_defining_equation_replay(corpus):
    for bundle in corpus.values():
        assert krein_reconstruction_residual(bundle.decomp, bundle.kt) < 1e-10


def test_krein_distance_basis_cross_check(corpus):
    # independent route: expand E_i o E_j in the distance-matrix basis (its
    # coefficient at class l is any entry at distance l), then convert with
    # the eigenvalue matrix P[h,l] = trace(A_l E_h)/m_h
    for name, bundle in corpus.items():
        E, n, d = bundle.decomp.E, bundle.graph.n, bundle.idata.d
        A = distance_matrices(bundle.dm)
        P = np.zeros((d + 1, d + 1))
        for h in range(d + 1):
            for l in range(d + 1):
                P[h, l] = float(np.sum(A[l] * E[h])) / bundle.decomp.mult[h]
        for i in range(d + 1):
            for j in range(d + 1):
                had = E[i] * E[j]
                alpha = [float(had[bundle.dm.dist == l].mean()) for l in range(d + 1)]
                for h in range(d + 1):
                    q_alt = n * sum(alpha[l] * P[h, l] for l in range(d + 1))
                    assert abs(q_alt - bundle.kt.q[h, i, j]) < TOL, (name, h, i, j)


def test_entrywise_span_property(corpus):
    for bundle in corpus.values():
        cutoff = 1e-6 * float(np.abs(bundle.kt.q).max())
        pairs = sample_pairs(bundle.graph.n)
        assert entrywise_span_residual(bundle.decomp, bundle.kt, cutoff, pairs) < TOL


def test_sample_pairs_deterministic_and_covering():
    small = sample_pairs(3)
    assert small == [(x, y) for x in range(3) for y in range(3)]
    big = sample_pairs(30)
    assert big == sample_pairs(30)
    assert len(big) > 50


def test_degenerate_spectrum_never_fires_on_corpus(corpus):
    # intersection matrices of distance-regular graphs always have d+1
    # distinct eigenvalues; the guard must stay silent here
    for bundle in corpus.values():
        theta = np.array(bundle.decomp.theta)
        assert float(np.diff(np.sort(theta)).min()) > 1e-6


def test_cycle_spectra_match_cosines():
    for n in (5, 8, 10):
        g = cycle_graph(n)
        idata = check_distance_regular(g, distance_matrix(g))
        np.testing.assert_allclose(eigenvalues(idata), cycle_eigenvalues(n), atol=1e-9)
