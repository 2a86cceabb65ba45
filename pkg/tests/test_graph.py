import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from app.errors import (
    AsymmetricAdjacency,
    DimensionMismatch,
    EigenSolverFailure,
    NegativeWeight,
    NonPositiveGain,
    NonzeroDiagonal,
)
from app.graph import (
    augmented_graph,
    build_topology,
    eigenvalues,
    h_matrices,
    is_leader_globally_reachable,
    is_positive_stable,
    laplacian,
)
from tests.conftest import LEADER_LINKS, RING

RING_LAPLACIAN = [
    [2, -1, 0, 0, -1],
    [-1, 2, -1, 0, 0],
    [0, -1, 2, -1, 0],
    [0, 0, -1, 2, -1],
    [-1, 0, 0, -1, 2],
]


def test_ring_laplacian(ring_topology):
    """The five-follower ring gives the reference Laplacian."""
    assert_array_equal(laplacian(ring_topology), RING_LAPLACIAN)


def test_single_follower():
    t = build_topology([[0]], [1])
    assert t.n_followers == 1
    assert_array_equal(laplacian(t), [[0]])

    m = h_matrices(t, 2.0)
    assert_array_equal(m.h1, [[2]])
    assert_array_equal(m.h2, [[1]])


def test_weighted_pair():
    t = build_topology([[0, 3], [3, 0]], [1, 0])
    assert_array_equal(laplacian(t), [[3, -3], [-3, 3]])


def test_rejects_asymmetric_adjacency():
    with pytest.raises(AsymmetricAdjacency):
        build_topology([[0, 1], [0, 0]], [1, 0])


def test_rejects_bad_inputs():
    with pytest.raises(NegativeWeight):
        build_topology([[0, -1], [-1, 0]], [1, 0])
    with pytest.raises(NegativeWeight):
        build_topology([[0, 1], [1, 0]], [-1, 0])
    with pytest.raises(NonzeroDiagonal):
        build_topology([[1, 1], [1, 0]], [1, 0])
    with pytest.raises(DimensionMismatch):
        build_topology([[0, 1, 0], [1, 0, 1]], [1, 0])
    with pytest.raises(DimensionMismatch):
        build_topology([[0, 1], [1, 0]], [1, 0, 0])


def test_adjacency_is_never_symmetrized():
    a = [[0, 2], [2, 0]]
    t = build_topology(a, [1, 0])
    assert_array_equal(t.adjacency, a)
    with pytest.raises(ValueError):
        t.adjacency[0, 1] = 5.0


def test_unreachable_leader_only_warns(caplog):
    t = build_topology(RING, [0, 0, 0, 0, 0])
    assert "unreachable" in caplog.text
    assert not is_leader_globally_reachable(t)


def test_h_matrices_of_ring(ring_topology):
    m = h_matrices(ring_topology, 1.0)
    expected = np.diag(LEADER_LINKS) + np.array(RING_LAPLACIAN)
    assert_array_equal(m.h1, expected)
    assert_array_equal(m.h2, expected)
    assert is_positive_stable(m.h2)
    assert np.linalg.eigvalsh(m.h2).min() > 0


def test_h_matrices_rejects_non_positive_l(ring_topology):
    with pytest.raises(NonPositiveGain):
        h_matrices(ring_topology, 0.0)


def test_reachability():
    assert is_leader_globally_reachable(build_topology(RING, LEADER_LINKS))
    assert not is_leader_globally_reachable(build_topology([[0, 0], [0, 0]], [1, 0]))


def test_augmented_graph_numbering(ring_topology):
    """Leader is node 0 and follower i is node i + 1."""
    g = augmented_graph(ring_topology)
    assert sorted(g.neighbors(0)) == [1]
    assert sorted(g.neighbors(1)) == [0, 2, 5]


def test_positive_stability_edge_cases(ring_topology):
    assert not is_positive_stable(np.zeros((1, 1)))
    assert not is_positive_stable(laplacian(ring_topology))


def test_eigenvalues_of_non_symmetric_matrix():
    vals = eigenvalues(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert_allclose(sorted(vals.imag), [-1.0, 1.0])


def test_eigenvalues_reject_non_finite():
    with pytest.raises((EigenSolverFailure, ValueError)):
        eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_random_connected_graphs(random_connected_graph, rng):
    """Connected follower graph plus one leader link: reachable and positive stable."""
    for _ in range(100):
        n = int(rng.integers(1, 9))
        a = random_connected_graph(n) if n > 1 else np.zeros((1, 1))
        b = np.where(rng.uniform(size=n) < 0.3, rng.uniform(0.5, 2.0, n), 0.0)
        b[int(rng.integers(0, n))] = 1.0
        t = build_topology(a, b)
        m = h_matrices(t, float(rng.uniform(0.1, 3.0)))

        assert is_leader_globally_reachable(t)
        assert is_positive_stable(m.h1)
        assert is_positive_stable(m.h2)
        assert np.all(np.abs(laplacian(t).sum(axis=1)) <= 1e-12)

        unlinked = build_topology(a, np.zeros(n))
        assert np.min(np.abs(eigenvalues(h_matrices(unlinked, 1.0).h1).real)) <= 1e-9


def test_h1_equals_h2_at_unit_l(random_connected_graph, rng):
    a = random_connected_graph(6)
    t = build_topology(a, rng.uniform(0.0, 1.0, 6))
    m = h_matrices(t, 1.0)
    assert_array_equal(m.h1, m.h2)
