"""Daisy search, uniform minors and restrictions, matroid counting."""

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from turan_matroids.bitsets import bit_indices, mask_of, popcount
from turan_matroids.hypergraphs import (
    UniformHypergraph,
    basis_hypergraph,
    complete_uniform,
    daisy,
    daisy_completed_by_edge,
    has_daisy,
    hypergraph_is_matroidal,
    matroidal_local_diagnostic,
    suspension,
)
from turan_matroids.geometry import projective_geometry, rank3_multiline, two_disjoint_lines, uniform
from turan_matroids.matroid import MatroidError, rank_of, contract, delete
from turan_matroids.minors import (
    bell_number,
    count_matroids,
    has_uniform_minor,
    has_uniform_restriction,
    uniform_minor_oracle,
)

from conftest import linear_matroids, random_linear


def test_basis_hypergraph_of_uniform_is_complete():
    H = basis_hypergraph(uniform(3, 4))
    assert H.edges == complete_uniform(4, 3).edges
    assert H.edge_count == 4
    assert hypergraph_is_matroidal(H)


def test_two_disjoint_edges_not_matroidal():
    H = UniformHypergraph.from_edges(4, 2, [0b0011, 0b1100])
    assert not hypergraph_is_matroidal(H)


def test_single_edge_matroidal():
    H = UniformHypergraph.from_edges(6, 3, [0b000111])
    assert hypergraph_is_matroidal(H)


def test_local_diagnostic_agrees_exhaustively_small():
    # all 3-uniform hypergraphs on 5 vertices
    triples = [mask_of(c) for c in combinations(range(5), 3)]
    for pick in range(1, 1 << len(triples)):
        edges = [triples[i] for i in bit_indices(pick)]
        H = UniformHypergraph.from_edges(5, 3, edges)
        assert hypergraph_is_matroidal(H) == matroidal_local_diagnostic(H)


@given(st.integers(1, 2**20 - 1))
def test_local_diagnostic_agrees_sampled_v6(pick):
    triples = [mask_of(c) for c in combinations(range(6), 3)]
    edges = [triples[i] for i in bit_indices(pick)]
    H = UniformHypergraph.from_edges(6, 3, edges)
    assert hypergraph_is_matroidal(H) == matroidal_local_diagnostic(H)


def test_suspension_shapes():
    H = complete_uniform(4, 2)
    S = suspension(H, 3)
    assert S.edge_count == H.edge_count == 6
    assert S.v == H.v + 1
    assert suspension(H, 2) == H
    assert daisy(3, 2, 4).edges == S.edges


def test_has_daisy_examples():
    assert has_daisy(basis_hypergraph(uniform(3, 6)), 2, 4)[0]
    assert not has_daisy(basis_hypergraph(projective_geometry(3, 2)), 2, 4)[0]
    K = complete_uniform(5, 3)
    found, witness = has_daisy(K, 3, 5)
    assert found and witness == (0, 0b11111)


def test_daisy_witness_is_valid():
    H = basis_hypergraph(uniform(3, 6))
    found, (stem, petals) = has_daisy(H, 2, 4)
    assert found and stem & petals == 0
    assert popcount(stem) == 1 and popcount(petals) == 4
    edge_set = set(H.edges)
    for pair in combinations(list(bit_indices(petals)), 2):
        assert stem | mask_of(pair) in edge_set


def test_daisy_completed_by_edge_incremental():
    K = complete_uniform(4, 3)
    edges = set(K.edges)
    last = K.edges[-1]
    assert daisy_completed_by_edge(edges, 3, 3, 4, last)
    smaller = set(K.edges[:-1])
    assert not daisy_completed_by_edge(smaller, 3, 3, 4, K.edges[0])


def test_has_uniform_minor_examples():
    assert has_uniform_minor(uniform(2, 3), 2, 3)[0]
    assert not has_uniform_minor(projective_geometry(3, 2), 2, 4)[0]
    assert not has_uniform_minor(two_disjoint_lines(4, 4), 3, 5)[0]
    assert not has_uniform_minor(uniform(2, 3), 3, 3)[0]  # s above rank


def test_minor_witness_maps_to_uniform_minor():
    M = uniform(3, 6)
    found, w = has_uniform_minor(M, 2, 4)
    assert found
    assert rank_of(M, w.contracted) == popcount(w.contracted)
    for sub in combinations(list(bit_indices(w.selected)), 2):
        assert rank_of(M, w.contracted | mask_of(sub)) == M.r


@given(linear_matroids(max_n=6))
def test_minor_monotone_in_t(M):
    for s in range(1, M.r + 1):
        present = [has_uniform_minor(M, s, t)[0] for t in range(s, M.n + 1)]
        # once absent at t, absent for all larger t
        for a, b in zip(present, present[1:]):
            assert a or not b


def test_minor_stable_under_minors(rng):
    for _ in range(25):
        M = random_linear(rng, min_n=3, max_n=6)
        for s in range(1, M.r + 1):
            for t in range(s, M.n):
                for e in range(M.n):
                    for N in (delete(M, e), contract(M, e)):
                        if s <= N.r and has_uniform_minor(N, s, t)[0]:
                            assert has_uniform_minor(M, s, t)[0]


def test_has_uniform_restriction_examples():
    assert has_uniform_restriction(uniform(3, 5), 3, 4)[0]
    assert not has_uniform_restriction(projective_geometry(3, 2), 3, 5)[0]
    # two 3-point lines exhaust the ground set: any 5 points meet a line
    # in 3, so there is no free 5-point restriction (but there is a free
    # 4-point one, two points from each line)
    assert not has_uniform_restriction(rank3_multiline([3, 3]), 3, 5)[0]
    assert has_uniform_restriction(rank3_multiline([3, 3]), 3, 4)[0]
    # with three lines, 2+2+1 points avoid every line
    assert has_uniform_restriction(rank3_multiline([3, 3, 3]), 3, 5)[0]


def test_restriction_witness_is_uniform():
    M = rank3_multiline([3, 3, 3])
    found, subset = has_uniform_restriction(M, 3, 5)
    assert found and popcount(subset) == 5
    assert rank_of(M, subset) == 3
    for sub in combinations(list(bit_indices(subset)), 3):
        assert rank_of(M, mask_of(sub)) == 3


def test_detector_agrees_with_oracle(rng):
    for _ in range(60):
        M = random_linear(rng, min_n=2, max_n=6)
        for s in range(1, M.r + 1):
            for t in range(s, M.n + 1):
                assert has_uniform_minor(M, s, t)[0] == uniform_minor_oracle(M, s, t)


def test_count_matroids_values():
    assert count_matroids(3, 2) == 7
    for n in range(1, 6):
        for r in range(n + 1):
            assert count_matroids(n, r) == count_matroids(n, n - r)
    assert count_matroids(4, 2) <= bell_number(5) == 52


def test_count_matroids_budget_guard():
    with pytest.raises(MatroidError):
        count_matroids(7, 3)


def test_count_matroids_up_to_iso():
    # 7 labeled rank-2 families on a 3-set: three singletons, three pairs,
    # and the full triangle, giving 3 relabeling classes
    assert count_matroids(3, 2, up_to_iso=True) == 3


def test_bell_numbers():
    assert [bell_number(k) for k in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    for n in range(1, 9):
        assert bell_number(n + 1) <= (n + 1) ** (n + 1)
