import random
from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baranyai.decomp import (
    CliqueFamily,
    RunReport,
    bagfree_decomposition,
    find_swap_candidates,
    initial_decomposition,
    repair_decomposition,
    build_parpartition_family,
)
from baranyai.errors import ConditionUnmet, DomainError, RepairFailure
from baranyai.graph import Graph, TripleGraphSystem
from baranyai.synth import gen_dense, gen_system
from baranyai.verify import verify_block_bags, verify_decomposition, verify_theorem_output


def test_initial_decomposition():
    assert initial_decomposition(6, 2).blocks == [(0, 1), (2, 3), (4, 5)]
    fam = initial_decomposition(7, 3)
    assert fam.blocks == [(0, 1, 2), (3, 4, 5)] and fam.leftover() == [6]
    with pytest.raises(DomainError):
        initial_decomposition(4, 5)
    with pytest.raises(DomainError):
        initial_decomposition(4, 1)


def test_candidates_complete_graph():
    m = 10
    fam = initial_decomposition(m, 2)
    for a_idx, block in enumerate(fam.blocks):
        for a1 in block:
            cands = find_swap_candidates(Graph.complete(m), fam, a_idx, a1)
            assert len(cands) == m - 2
            assert [c.b1 for c in cands] == sorted(c.b1 for c in cands)


def test_candidate_excluded_when_a1_misses_host_block():
    g = Graph.complete(6)
    g.remove_edge(0, 3)
    cands = find_swap_candidates(g, initial_decomposition(6, 2), 0, 0)
    assert [c.b1 for c in cands] == [4, 5]


def test_repair_complete_graph_is_identity():
    fam = initial_decomposition(9, 3)
    assert repair_decomposition(Graph.complete(9), fam).blocks == fam.blocks


def test_repair_edgeless_fails():
    with pytest.raises(RepairFailure) as exc:
        repair_decomposition(Graph(4), initial_decomposition(4, 2))
    assert exc.value.candidates_found == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(20, 70), st.integers(0, 10**6))
def test_repair_under_density_condition(l, m, seed):
    delta = ceil(Fraction(m * (3 * l - 1), 3 * l))
    if delta > m - 1:
        return
    g = gen_dense(m, delta, seed)
    report = RunReport()
    fam = repair_decomposition(g, initial_decomposition(m, l), report)
    assert verify_decomposition(g, fam.blocks, l)["ok"]
    trace = report.defect_trace
    assert all(b < a for a, b in zip(trace, trace[1:]))
    assert trace[-1] == 0


def test_candidate_bound_on_repaired_family():
    m, l = 120, 3
    delta = ceil(Fraction(m * (3 * l - 1), 3 * l))
    rng = random.Random(5)
    for seed in range(3):
        g = gen_dense(m, delta, seed)
        fam = repair_decomposition(g, initial_decomposition(m, l))
        for _ in range(100):
            a_idx = rng.randrange(len(fam.blocks))
            a1 = rng.choice(fam.blocks[a_idx])
            assert len(find_swap_candidates(g, fam, a_idx, a1)) >= ceil(Fraction(m, 3))


def test_bagfree_without_blue_edges_is_repair():
    sys = gen_system(60, 50, 2, 0, 3)
    fam = bagfree_decomposition(sys, 2)
    assert fam.blocks == repair_decomposition(sys.g1, initial_decomposition(60, 2)).blocks


def forced_swap_system():
    g1 = Graph.complete(6)
    for e in [(1, 3), (0, 2)]:
        g1.remove_edge(*e)
    return TripleGraphSystem(g1, Graph(6, [(1, 3)]), Graph(6, [(0, 2)]))


def test_bagfree_swaps_when_blue_edge_closes_a_bag():
    sys = forced_swap_system()
    plain = repair_decomposition(sys.g1, initial_decomposition(6, 2))
    assert plain.blocks == [(0, 1), (2, 3), (4, 5)]
    report = RunReport()
    fam = bagfree_decomposition(sys, 2, report=report)
    assert fam.blocks != plain.blocks
    assert report.bag_swaps == 1
    assert verify_block_bags(fam.blocks, sys.g2, sys.g3)["ok"]
    assert verify_decomposition(sys.g1, fam.blocks, 2)["ok"]


def test_guaranteed_mode_checks_conditions():
    with pytest.raises(ConditionUnmet):
        bagfree_decomposition(forced_swap_system(), 2, mode="guaranteed")


def test_family_hypothesis_violation():
    with pytest.raises(ConditionUnmet) as exc:
        build_parpartition_family(74, 5, 2, "1/2", "1/2", mode="guaranteed")
    names = {r.name for r in exc.value.reports if not r.holds}
    assert "k^2*l<=n/3" in names


def test_family_best_effort_small():
    try:
        fam, _ = build_parpartition_family(9, 3, 2, "5/6", "5/6", mode="best_effort")
    except RepairFailure:
        return
    assert len(fam.parpartitions) == 42
    assert verify_theorem_output(fam, Fraction(5, 6), Fraction(5, 6))["ok"]


def test_clique_family_json_sorted():
    fam = CliqueFamily(6, 2, [(4, 5), (0, 1)])
    assert fam.to_json() == {"m": 6, "l": 2, "blocks": [[0, 1], [4, 5]]}
    assert CliqueFamily.from_json(fam.to_json()).blocks == [(0, 1), (4, 5)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_bagfree_small_random_certified(seed):
    sys = gen_system(40, 34, 1, 1, seed)
    try:
        fam = bagfree_decomposition(sys, 2)
    except RepairFailure:
        return
    assert verify_decomposition(sys.g1, fam.blocks, 2)["ok"]
    assert verify_block_bags(fam.blocks, sys.g2, sys.g3)["ok"]
