import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tensorbounds import (Hypergraph, PreconditionError, SparseTensor, adjacency_tensor,
                          bipartition_structure, is_weakly_irreducible, neighbor_nonempty_check,
                          representation_matrix, row_profile, row_sums)

from corpus import (H1, P3, TRIANGLE, brute_force_weakly_irreducible, matrix, random_bipartite,
                    random_tensor, reducibility_corpus)

SINGLE_EDGE = Hypergraph(3, 3, ((0, 1, 2),))


class TestRepresentationMatrix:
    def test_matrix_case_is_identity_map(self):
        A = np.array([[0, 2.0, 0], [1.0, 0, 3.0], [0.5, 0, 0]])
        assert np.array_equal(representation_matrix(SparseTensor.from_dense(A)), A)

    def test_single_edge(self):
        G = representation_matrix(adjacency_tensor(SINGLE_EDGE))
        np.testing.assert_allclose(G, np.ones((3, 3)) - np.eye(3), rtol=1e-15)

    def test_repeated_tail_index_counted_once(self):
        G = representation_matrix(SparseTensor.from_entries(3, 2, {(0, 1, 1): 5.0}))
        assert G.tolist() == [[0.0, 5.0], [0.0, 0.0]]

    def test_pattern_matches_neighbor_sets(self):
        for T in reducibility_corpus()[:40]:
            G = representation_matrix(T)
            nb = row_profile(T, np.ones(T.dim)).neighbors
            assert {(i, j) for i, j in zip(*np.nonzero(G))} == {(i, j) for i in range(T.dim) for j in nb[i]}


class TestWeakIrreducibility:
    def test_examples(self):
        assert is_weakly_irreducible(matrix(P3))
        assert not is_weakly_irreducible(matrix([[0, 1], [0, 0]]))
        two_edges = Hypergraph(6, 3, ((0, 1, 2), (3, 4, 5)))
        assert not is_weakly_irreducible(adjacency_tensor(two_edges))

    def test_dimension_one_is_irreducible(self):
        assert is_weakly_irreducible(SparseTensor(3, 1, np.zeros((0, 3)), []))

    def test_agrees_with_subset_scan(self):
        for T in reducibility_corpus():
            assert is_weakly_irreducible(T) == brute_force_weakly_irreducible(T)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 6), st.floats(0.02, 0.5))
    def test_agrees_with_subset_scan_random(self, seed, m, n, density):
        T = random_tensor(np.random.default_rng(seed), m, n, density)
        assert is_weakly_irreducible(T) == brute_force_weakly_irreducible(T)

    def test_positive_rows_and_neighbors_when_irreducible(self):
        for T in reducibility_corpus():
            if T.dim >= 2 and is_weakly_irreducible(T):
                assert np.all(row_sums(T) > 0)
                assert neighbor_nonempty_check(T)


class TestNeighborCheck:
    def test_examples(self):
        assert neighbor_nonempty_check(matrix(P3))
        assert not neighbor_nonempty_check(matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]))
        assert not neighbor_nonempty_check(matrix([[0, 1], [0, 0]]))


class TestBipartition:
    def test_path(self):
        split = bipartition_structure(matrix(P3))
        assert split.U == {0, 2} and split.W == {1} and split.ell is None

    def test_triangle_has_none(self):
        assert bipartition_structure(matrix(TRIANGLE)) is None

    def test_hypergraph_adjacency_has_none(self):
        assert bipartition_structure(adjacency_tensor(H1)) is None
        assert bipartition_structure(adjacency_tensor(SINGLE_EDGE)) is None

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            bipartition_structure(matrix([[0, 1], [0, 0]]))
        with pytest.raises(PreconditionError):
            bipartition_structure(matrix([[1, 1], [1, 0]]))

    @pytest.mark.parametrize("seed", range(25))
    def test_planted_split_is_found_and_valid(self, seed):
        rng = np.random.default_rng(seed)
        m = (2, 3, 4)[seed % 3]
        T, U = random_bipartite(rng, m, int(rng.integers(2, 7)), 0.6)
        split = bipartition_structure(T)
        assert split is not None and 0 in split.U
        assert split.U | split.W == set(range(T.dim)) and not split.U & split.W
        for lead, *tail in T.indices.tolist():
            lead_in_U = lead in split.U
            assert all((v in split.U) != lead_in_U for v in tail)
        # planted split up to swapping the class names
        assert split.U in (frozenset(U), frozenset(set(range(T.dim)) - U))
