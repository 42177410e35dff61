"""Maintenance operations: unit insert, removal, batch, and their stats."""

from __future__ import annotations

import pytest

from coremaint.decompose import decompose, validate_quiescent
from coremaint.graph import Graph
from coremaint.maintain import (
    batch_edge_insert,
    compute_mcd,
    edge_insert,
    edge_remove,
)
from coremaint.oracle import naive_cores


def build(n, edges):
    g = Graph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def fresh(n, edges):
    g = build(n, edges)
    return g, decompose(g)


def assert_ok(g, cs):
    assert cs.core == naive_cores(g)
    assert validate_quiescent(cs, g) == []


# ---------------------------------------------------------------- insert

def test_insert_cross_component_traverses_three():
    # components {a-b, b-c} and {x-y}; the new edge joins them, no core
    # changes, and exactly three vertices are inspected
    g, cs = fresh(5, [(0, 1), (1, 2), (3, 4)])
    stats = edge_insert(g, cs, 0, 3, debug=True)
    assert stats.v_star_size == 0
    assert stats.v_plus_size == 3
    assert stats.skipped == 1
    assert cs.core == [1, 1, 1, 1, 1]
    assert_ok(g, cs)


def test_insert_chord_builds_triangle():
    g, cs = fresh(3, [(0, 1), (1, 2)])
    stats = edge_insert(g, cs, 0, 2, debug=True)
    assert cs.core == [2, 2, 2]
    assert stats.v_star_size == 3
    assert list(cs.order.block(2)) == [0, 2, 1]  # discovery order
    assert_ok(g, cs)


def test_insert_first_edge_between_isolated():
    g, cs = fresh(2, [])
    stats = edge_insert(g, cs, 0, 1, debug=True)
    assert cs.core == [1, 1]
    assert stats.v_star_size == 2
    assert_ok(g, cs)


def test_insert_inside_roomy_core_early_returns():
    # bridge between two 4-cliques: the tail peeled last in its clique, so
    # its out-degree stays within budget and nothing is traversed
    clique_a = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    clique_b = [(u + 4, v + 4) for u, v in clique_a]
    g, cs = fresh(8, clique_a + clique_b)
    stats = edge_insert(g, cs, 3, 7, debug=True)
    assert stats.v_plus_size == 0 and stats.v_star_size == 0
    assert cs.core == [3] * 8
    assert_ok(g, cs)


def test_insert_errors():
    g, cs = fresh(3, [(0, 1)])
    with pytest.raises(ValueError):
        edge_insert(g, cs, 0, 1)
    with pytest.raises(ValueError):
        edge_insert(g, cs, 2, 2)
    with pytest.raises(ValueError):
        edge_insert(g, cs, 0, 9)


def test_insert_cycle_with_tail_eviction_cascade():
    # 4-cycle with a tail: a diagonal promotes nobody, but one endpoint is
    # first marked a candidate and then evicted when its successor cannot
    # keep up; the surviving candidate set matches the oracle (empty)
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]
    g, cs = fresh(5, edges)
    before = list(cs.core)
    stats = edge_insert(g, cs, 1, 3, debug=True)
    assert stats.v_star_size == 0
    assert stats.v_plus_size == 2  # forward on 1, backward on 3
    assert cs.core == before
    assert_ok(g, cs)


def test_insert_stats_counters():
    g, cs = fresh(5, [(0, 1), (1, 2), (3, 4)])
    stats = edge_insert(g, cs, 0, 3)
    # visited: three vertices, each inspected through its whole adjacency
    assert stats.e_plus == sum(len(g.adj[v]) for v in (0, 3, 4))
    assert stats.e_star == 0
    assert stats.rounds == 0


# ---------------------------------------------------------------- remove

def test_remove_triangle_edge_demotes_all():
    g, cs = fresh(3, [(0, 1), (1, 2), (2, 0)])
    stats = edge_remove(g, cs, 0, 1, debug=True)
    assert cs.core == [1, 1, 1]
    assert stats.v_star_size == 3
    assert stats.v_plus_size == 3
    assert_ok(g, cs)


def test_remove_path_end_isolates():
    g, cs = fresh(3, [(0, 1), (1, 2)])
    stats = edge_remove(g, cs, 0, 1, debug=True)
    assert cs.core == [0, 1, 1]
    assert stats.v_star_size == 1
    assert list(cs.order.block(0)) == [0]
    assert_ok(g, cs)


def test_remove_bridge_to_pendant():
    # 4-clique with a pendant vertex: cutting the bridge only demotes the
    # pendant
    g, cs = fresh(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])
    stats = edge_remove(g, cs, 0, 4, debug=True)
    assert stats.v_star_size == 1
    assert cs.core == [3, 3, 3, 3, 0]
    assert_ok(g, cs)


def test_remove_errors():
    g, cs = fresh(3, [(0, 1)])
    with pytest.raises(ValueError):
        edge_remove(g, cs, 1, 2)
    with pytest.raises(ValueError):
        edge_remove(g, cs, 0, 9)


def test_remove_then_add_restores_cores():
    g, cs = fresh(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    before = list(cs.core)
    edge_remove(g, cs, 0, 2, debug=True)
    edge_insert(g, cs, 0, 2, debug=True)
    assert cs.core == before
    assert_ok(g, cs)


def test_insert_then_remove_restores_cores_and_blocks():
    g, cs = fresh(5, [(0, 1), (1, 2), (3, 4)])
    cores = list(cs.core)
    edge_insert(g, cs, 0, 3, debug=True)
    edge_remove(g, cs, 0, 3, debug=True)
    assert cs.core == cores
    assert_ok(g, cs)


# ---------------------------------------------------------------- mcd

def test_mcd_isolated():
    g, cs = fresh(1, [])
    assert compute_mcd(cs, g, 0) == 0


def test_mcd_triangle():
    g, cs = fresh(3, [(0, 1), (1, 2), (2, 0)])
    assert compute_mcd(cs, g, 0) == 2


def test_mcd_pendant_on_clique():
    g, cs = fresh(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])
    assert compute_mcd(cs, g, 4) == 1


def test_mcd_cache_invalidated_per_epoch():
    g, cs = fresh(3, [(0, 1), (1, 2), (2, 0)])
    assert compute_mcd(cs, g, 0) == 2
    cs.epoch += 1
    g.remove_edge(0, 1)
    assert compute_mcd(cs, g, 0) == 1


# ---------------------------------------------------------------- batch

def chain_and_triangle():
    # chain 0-1-2-3 plus triangle 4-5-6; the two batch edges hook the chain
    # onto the triangle
    return fresh(7, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (4, 6)])


def test_batch_chain_triangle_promotes_two():
    g, cs = chain_and_triangle()
    stats = batch_edge_insert(g, cs, [(0, 5), (1, 5)], debug=True)
    assert stats.v_star_size == 2
    assert stats.v_plus_size == 3  # vertex 2 inspected but unchanged
    assert stats.rounds == 1
    assert cs.core == [2, 2, 1, 1, 2, 2, 2]
    assert_ok(g, cs)


def test_batch_matches_sequential_on_same_edges():
    edges = [(0, 5), (1, 5)]
    g1, cs1 = chain_and_triangle()
    seq_stats = [edge_insert(g1, cs1, u, v, debug=True) for u, v in edges]
    g2, cs2 = chain_and_triangle()
    batch_stats = batch_edge_insert(g2, cs2, edges, debug=True)
    assert cs1.core == cs2.core
    assert batch_stats.v_plus_size <= sum(s.v_plus_size for s in seq_stats)


def test_batch_of_one_equals_unit_insert():
    g1, cs1 = chain_and_triangle()
    s1 = edge_insert(g1, cs1, 0, 5, debug=True)
    g2, cs2 = chain_and_triangle()
    s2 = batch_edge_insert(g2, cs2, [(0, 5)], debug=True)
    assert cs1.core == cs2.core
    assert (s1.v_star_size, s1.v_plus_size) == (s2.v_star_size, s2.v_plus_size)


def test_batch_star_needs_multiple_rounds():
    # all edges share the tail budget of the centre, so they cannot all be
    # admitted in the first round
    g, cs = fresh(6, [])
    stats = batch_edge_insert(g, cs, [(0, i) for i in range(1, 6)], debug=True)
    assert stats.rounds > 1
    assert cs.core == [1] * 6
    assert_ok(g, cs)


def test_batch_drops_loops_duplicates_present():
    g, cs = fresh(4, [(0, 1)])
    stats = batch_edge_insert(
        g, cs, [(2, 2), (0, 1), (2, 3), (3, 2)], debug=True
    )
    assert stats.dropped == 3
    assert g.m == 2
    assert_ok(g, cs)


def test_batch_empty():
    g, cs = fresh(3, [(0, 1)])
    stats = batch_edge_insert(g, cs, [], debug=True)
    assert stats.rounds == 0 and stats.v_star_size == 0
    assert_ok(g, cs)


def test_batch_can_raise_max_core():
    # completing K5 from a 4-clique lifts the maximum core by one
    g, cs = fresh(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    batch_edge_insert(g, cs, [(4, 0), (4, 1), (4, 2), (4, 3)], debug=True)
    assert cs.core == [4] * 5
    assert_ok(g, cs)
