import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baranyai.errors import DomainError, InsufficientRoom
from baranyai.graph import Graph, assert_triple_disjointness, max_degree, min_degree
from baranyai.synth import check_generated, gen_dense, gen_sparse_pair, gen_system


def test_dense_at_full_degree_is_complete():
    assert gen_dense(9, 8, 123) == Graph.complete(9)


def test_dense_rejects_bad_delta():
    with pytest.raises(DomainError):
        gen_dense(5, 5, 0)


def test_same_seed_same_system():
    a = gen_system(50, 40, 2, 2, 7)
    b = gen_system(50, 40, 2, 2, 7)
    assert a.to_json() == b.to_json()
    assert gen_system(50, 40, 2, 2, 8).to_json() != a.to_json()


def test_seed_reduced_to_64_bits():
    assert gen_dense(20, 15, 5) == gen_dense(20, 15, 5 + (1 << 64))


def test_no_room_for_sparse_pair():
    with pytest.raises(InsufficientRoom):
        gen_sparse_pair(6, 1, 0, Graph.complete(6), 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(10, 60), st.integers(0, 10**9), st.integers(1, 3), st.integers(0, 3))
def test_generated_systems_meet_targets(m, seed, d2, d3):
    delta = m - 1 - m // 8 - d2 - d3
    sys = gen_system(m, delta, d2, d3, seed)
    assert check_generated(sys, delta, d2, d3)
    assert min_degree(sys.g1) >= delta
    assert max_degree(sys.g2) == d2
    assert max_degree(sys.g3) == d3 or d3 == 0
    assert assert_triple_disjointness(sys) == []
    assert sys.meta["provenance"]["seed"] == seed
