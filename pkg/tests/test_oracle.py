"""Oracle, script generation, replay checks, and shrinking."""

from __future__ import annotations

from coremaint.decompose import decompose
from coremaint.graph import Graph
from coremaint.maintain import edge_insert
from coremaint.oracle import (
    OpStep,
    fuzz,
    generate_script,
    naive_cores,
    random_graph,
    replay,
    sanitize_script,
)


def build(n, edges):
    g = Graph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def test_naive_empty():
    assert naive_cores(Graph(4)) == [0, 0, 0, 0]


def test_naive_triangle():
    g = build(3, [(0, 1), (1, 2), (2, 0)])
    assert naive_cores(g) == [2, 2, 2]


def test_naive_cycle_with_chains():
    g = build(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (1, 5)])
    assert naive_cores(g) == [2, 2, 2, 1, 1, 1]


def test_naive_agrees_with_decompose_on_many_random_graphs():
    for seed in range(1000):
        n = 20 + seed % 81
        m = min(2 * n, n * (n - 1) // 2)
        g = random_graph(n, m, seed)
        assert decompose(g).core == naive_cores(g)


def test_random_graph_deterministic():
    a = random_graph(30, 60, 5)
    b = random_graph(30, 60, 5)
    assert a.adj == b.adj
    assert a.m == 60


def test_generate_script_preconditions_hold():
    g = random_graph(20, 30, 0)
    script = generate_script(g, 200, 1)
    assert sanitize_script(g, script) == script
    kinds = {s.kind for s in script}
    assert kinds == {"insert", "remove"}


def test_generate_script_alternates():
    g = random_graph(20, 30, 0)
    script = generate_script(g, 10, 1, mode="alternate")
    assert [s.kind for s in script[:4]] == ["insert", "remove", "insert", "remove"]


def test_fuzz_clean_run():
    report = fuzz(n=50, m=120, steps=200, seed=1)
    assert report.ok
    assert str(report).startswith("0 violations")


def test_insert_only_script_reaches_complete_graph():
    g = Graph(6)
    cs = decompose(g)
    for u in range(6):
        for v in range(u + 1, 6):
            edge_insert(g, cs, u, v, debug=True)
    assert cs.core == [5] * 6


def test_replay_steps_zero_validates_decomposition():
    g = random_graph(30, 60, 2)
    violations, idx, stats = replay(g, [])
    assert violations == [] and idx == 0 and stats == []


def test_fault_injection_is_detected_and_minimized():
    def hook(g, cs, i):
        cs.deg_out[i % g.n] += 1

    report = fuzz(n=30, m=60, steps=50, seed=3, fault_hook=hook)
    assert not report.ok
    assert report.failing_step == 0
    assert any(v.startswith("quiescent") for v in report.violations)
    assert report.minimized is not None
    assert len(report.minimized) <= len(report.script)
    # the minimized script still reproduces the same violation category
    cat = report.violations[0].split(":", 1)[0]
    g0 = random_graph(30, 60, 3)
    violations, _, _ = replay(g0, report.minimized, fault_hook=hook)
    assert violations and violations[0].split(":", 1)[0] == cat


def test_sanitizer_drops_invalid_steps():
    g = build(3, [(0, 1)])
    script = [
        OpStep("insert", 0, 1),   # already present
        OpStep("insert", 1, 2),
        OpStep("remove", 1, 2),
        OpStep("remove", 1, 2),   # removed twice
        OpStep("remove", 0, 2),   # never present
    ]
    assert sanitize_script(g, script) == [OpStep("insert", 1, 2), OpStep("remove", 1, 2)]
