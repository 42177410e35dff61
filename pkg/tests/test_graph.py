"""Graph storage, edge-list parsing, and sampling."""

from __future__ import annotations

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coremaint.graph import (
    Graph,
    ParseError,
    dump_edge_list,
    load_edge_list,
    sample_edges,
)


def check_consistent(g: Graph):
    assert g.m * 2 == sum(len(a) for a in g.adj)
    for u, nbrs in enumerate(g.adj):
        assert u not in nbrs
        for v in nbrs:
            assert u in g.adj[v]


def test_load_dedup_and_self_loop():
    g = load_edge_list(io.StringIO("0 1\n1 0\n1 1\n"))
    assert g.n == 2 and g.m == 1
    check_consistent(g)


def test_load_comment_and_compaction():
    g = load_edge_list(io.StringIO("# c\n5 7\n"))
    assert g.n == 2 and g.m == 1
    assert g.original_ids == [5, 7]


def test_load_triangle():
    g = load_edge_list(io.StringIO("0 1\n1 2\n2 0\n"))
    assert g.m == 3
    assert all(g.degree(v) == 2 for v in range(3))


def test_load_empty_stream():
    g = load_edge_list(io.StringIO(""))
    assert g.n == 0 and g.m == 0


def test_load_self_loop_still_registers_vertex():
    g = load_edge_list(io.StringIO("5 5\n0 1\n"))
    assert g.n == 3 and g.m == 1


def test_load_malformed_reports_line():
    with pytest.raises(ParseError, match="line 2"):
        load_edge_list(io.StringIO("0 1\n0 x\n"))
    with pytest.raises(ParseError, match="line 1"):
        load_edge_list(io.StringIO("0 1 2\n"))
    with pytest.raises(ParseError, match="line 3"):
        load_edge_list(io.StringIO("0 1\n\n-1 2\n"))


def test_add_edge():
    g = Graph(2)
    assert g.add_edge(0, 1) is True
    assert g.m == 1
    assert g.add_edge(0, 1) is False
    assert g.m == 1
    assert g.add_edge(0, 0) is False
    check_consistent(g)


def test_remove_edge():
    g = Graph(2)
    g.add_edge(0, 1)
    assert g.remove_edge(0, 1) is True
    assert g.m == 0
    assert g.remove_edge(0, 1) is False
    g.add_edge(1, 0)
    assert g.m == 1
    check_consistent(g)


def test_vertex_range_errors():
    g = Graph(2)
    with pytest.raises(ValueError):
        g.add_edge(0, 2)
    with pytest.raises(ValueError):
        g.remove_edge(-1, 0)


def test_round_trip():
    g = load_edge_list(io.StringIO("0 1\n1 2\n2 0\n1 3\n"))
    buf = io.StringIO()
    dump_edge_list(g, buf)
    g2 = load_edge_list(io.StringIO(buf.getvalue()))
    assert g2.n == g.n and g2.m == g.m
    assert g2.adj == g.adj


def test_sample_edges():
    g = load_edge_list(io.StringIO("0 1\n1 2\n2 0\n"))
    assert sample_edges(g, 0, 1) == []
    assert sorted(sample_edges(g, 3, 1)) == [(0, 1), (0, 2), (1, 2)]
    assert sample_edges(g, 2, 42) == sample_edges(g, 2, 42)
    with pytest.raises(ValueError):
        sample_edges(g, 4, 1)


def test_copy_is_independent():
    g = Graph(3)
    g.add_edge(0, 1)
    h = g.copy()
    h.add_edge(1, 2)
    assert g.m == 1 and h.m == 2


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(st.booleans(), st.integers(0, 7), st.integers(0, 7)),
        max_size=80,
    )
)
def test_symmetry_after_any_script(script):
    g = Graph(8)
    for add, u, v in script:
        if add:
            g.add_edge(u, v)
        else:
            g.remove_edge(u, v)
    check_consistent(g)
