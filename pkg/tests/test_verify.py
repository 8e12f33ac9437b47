from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baranyai.bags import family_bag_scan, window_bag_scan
from baranyai.errors import DomainError
from baranyai.graph import Graph, TripleGraphSystem
from baranyai.verify import (
    CountAudit,
    brute_force_search,
    check_conditions,
    count_spanning_windows,
    count_swap_candidates,
    verify_block_bags,
    verify_decomposition,
    verify_ham_power,
    verify_window_bags,
)


def by_name(reports):
    return {r.name: r for r in reports}


def test_condition_arithmetic_m243():
    r = by_name(check_conditions(243, 2, 76, 203, 2, 2))
    # 243*8/9 + (5+76)/9 = 216 + 9
    assert r["cycle_density"].lhs == 225
    assert r["cycle_sparsity"].rhs == Fraction(75, 30)
    assert r["family_density"].lhs == Fraction(405, 2)
    assert r["family_sparsity"].rhs == 4
    assert r["family_density"].holds and r["family_sparsity"].holds
    assert not r["cycle_sparsity"].holds


def test_condition_arithmetic_m150():
    r = by_name(check_conditions(150, 2, 76, 148, 1, 1))
    assert r["cycle_density"].lhs == Fraction(1200 + 81, 9)
    assert r["cycle_density"].holds and r["cycle_sparsity"].holds
    assert r["family_sparsity"].rhs == Fraction(147, 60)


@pytest.mark.parametrize("name,m,q,edge", [("family_density", 243, 1, 203), ("cycle_density", 243, 76, 225)])
def test_condition_flips_at_threshold(name, m, q, edge):
    assert by_name(check_conditions(m, 2, q, edge, 0, 0))[name].holds
    assert not by_name(check_conditions(m, 2, q, edge - 1, 0, 0))[name].holds


def test_condition_json_exact():
    j = by_name(check_conditions(243, 2, 1, 203, 2, 2))["family_density"].to_json()
    assert j == {"name": "family_density", "lhs": "405/2", "relation": "<=", "rhs": "203", "holds": True}


def test_verify_decomposition_violations():
    g = Graph.complete(6)
    g.remove_edge(0, 1)
    kinds = {v["kind"] for v in verify_decomposition(g, [[0, 1], [1, 2]], 2)["violations"]}
    assert kinds == {"count", "overlap", "non-edge"}
    assert verify_decomposition(g, [[0, 2], [1, 3], [4, 5]], 2)["ok"]


def test_verify_ham_power_violations():
    g = Graph.complete(6)
    g.remove_edge(0, 2)
    res = verify_ham_power(g, [0, 1, 2, 3, 4, 5], 3)
    assert [v["pair"] for v in res["violations"]] == [[0, 2]]
    assert not verify_ham_power(g, [0, 1, 2, 3, 4, 4], 3)["ok"]
    assert verify_ham_power(g, [0, 1, 2, 3, 4, 5], 2)["ok"]


def test_verify_block_bags():
    g2, g3 = Graph(6, [(0, 2)]), Graph(6, [(1, 3)])
    res = verify_block_bags([[0, 1], [2, 3], [4, 5]], g2, g3)
    assert res["violations"] == [{"pair": [0, 1], "e2": [0, 2], "e3": [1, 3]}]
    # shared endpoint: not a bag
    assert verify_block_bags([[0, 1], [2, 3]], Graph(6, [(0, 2)]), Graph(6, [(0, 3)]))["ok"]
    assert verify_block_bags([[0, 1], [2, 3], [4, 5]], g2, Graph(6, [(1, 5)]))["ok"]


def test_verify_window_bags():
    g2, g3 = Graph(8, [(0, 4)]), Graph(8, [(1, 5)])
    res = verify_window_bags(list(range(8)), 2, g2, g3)
    assert {tuple(v["pair"]) for v in res["violations"]} == {(0, 4)}
    # windows {0,1} and {2,3} are disjoint
    assert verify_window_bags(list(range(8)), 2, Graph(8, [(0, 2)]), Graph(8, [(1, 3)]))["violations"] == [
        {"pair": [0, 2], "e2": [0, 2], "e3": [1, 3]}
    ]


def test_count_helpers_on_complete_graph():
    g = Graph.complete(12)
    assert count_swap_candidates(g, [[0, 1], [2, 3], [4, 5]], 0, 0) == 4
    assert count_spanning_windows(g, list(range(12)), 0, 2) == 12 - 5


def test_count_audit_flags():
    a = CountAudit("swap_candidates", 5, measured=[5, 7], bad_bound=2, bad_counts=[0, 3])
    assert a.passed and not a.bad_passed
    assert a.to_json()["min_measured"] == 5


def test_brute_force_examples():
    k6 = TripleGraphSystem(Graph.complete(6), Graph(6), Graph(6))
    found, blocks = brute_force_search(k6, 2, 3)
    assert found and verify_decomposition(k6.g1, blocks, 2)["ok"]
    c6 = TripleGraphSystem(Graph(6, [(i, (i + 1) % 6) for i in range(6)]), Graph(6), Graph(6))
    assert brute_force_search(c6, 3, 1) == (False, [])
    assert brute_force_search(c6, 2, 3)[0]


def test_brute_force_respects_bags():
    # every perfect matching of K4 is a bag here
    sys = TripleGraphSystem(Graph.complete(4), Graph(4, [(0, 2), (0, 3)]), Graph(4, [(1, 3), (1, 2)]))
    assert brute_force_search(sys, 2, 2) == (False, [])
    for blocks in ([[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]):
        assert not verify_block_bags(blocks, sys.g2, sys.g3)["ok"]
    # with a single edge of each color, {0,2},{1,3} has both inside blocks
    sys2 = TripleGraphSystem(Graph.complete(4), Graph(4, [(0, 2)]), Graph(4, [(1, 3)]))
    found, blocks = brute_force_search(sys2, 2, 2)
    assert found and blocks == [[0, 2], [1, 3]]


def test_brute_force_cap():
    with pytest.raises(DomainError):
        brute_force_search(TripleGraphSystem(Graph(21), Graph(21), Graph(21)), 2, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(8, 14), st.integers(2, 3), st.randoms(use_true_random=False))
def test_window_verifier_agrees_with_scan(m, l, rnd):
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    g2 = Graph(m, rnd.sample(pairs, 3))
    g3 = Graph(m, rnd.sample(pairs, 3))
    seq = list(range(m))
    rnd.shuffle(seq)
    scanned = {pair for pair, _ in window_bag_scan(seq, l, g2, g3)}
    verified = {tuple(v["pair"]) for v in verify_window_bags(seq, l, g2, g3)["violations"]}
    assert scanned == verified


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.randoms(use_true_random=False))
def test_block_verifier_agrees_with_scan(nblocks, rnd):
    m = 2 * nblocks
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    g2 = Graph(m, rnd.sample(pairs, 3))
    g3 = Graph(m, rnd.sample(pairs, 3))
    verts = list(range(m))
    rnd.shuffle(verts)
    blocks = [verts[2 * i:2 * i + 2] for i in range(nblocks)]
    scanned = {pair for pair, _ in family_bag_scan(blocks, g2, g3)}
    verified = {tuple(v["pair"]) for v in verify_block_bags(blocks, g2, g3)["violations"]}
    assert scanned == verified
