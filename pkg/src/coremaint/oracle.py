"""Ground truth and differential fuzzing for the maintenance pipeline.

`naive_cores` recomputes core numbers by literal iterated deletion and
shares no machinery with the bucket peel, so the two can check each other.
`fuzz` builds a seeded random graph, replays a seeded script of edge
insertions and removals through the maintenance operations, and after every
step asserts the full property bundle:

  * cores equal `naive_cores` of the current graph,
  * `validate_quiescent` reports nothing,
  * each core changed by at most one, in the direction of the operation,
  * changed vertices all shared one pre-operation core value and induce a
    connected subgraph together with the operation's edge,
  * removal visits exactly the vertices whose core changes,
  * reported candidate counts match the observed core changes.

On a failure the script is shrunk greedily (suffix first, then single
steps, re-validating preconditions) to a minimal reproduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .decompose import CoreState, decompose, validate_quiescent
from .graph import Graph
from .maintain import OpStats, edge_insert, edge_remove

FaultHook = Callable[[Graph, CoreState, int], None]

_SHRINK_BUDGET = 300  # replays spent minimizing a failing script


def naive_cores(g: Graph) -> list[int]:
    """Core numbers by iterated deletion; quadratic-ish, desk scale only.

    For k = 1, 2, ... delete vertices of degree < k until a fixpoint;
    whoever survives stage k has core at least k.
    """
    n = g.n
    core = [0] * n
    alive = [True] * n
    deg = [len(a) for a in g.adj]
    k = 1
    remaining = n
    while remaining > 0:
        stack = [v for v in range(n) if alive[v] and deg[v] < k]
        while stack:
            v = stack.pop()
            if not alive[v]:
                continue
            alive[v] = False
            remaining -= 1
            for w in g.adj[v]:
                if alive[w]:
                    deg[w] -= 1
                    if deg[w] < k:
                        stack.append(w)
        for v in range(n):
            if alive[v]:
                core[v] = k
        k += 1
    return core


def random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform random graph with n vertices and m distinct edges."""
    if n < 0 or m < 0 or m > n * (n - 1) // 2:
        raise ValueError(f"no simple graph with n={n}, m={m}")
    rng = random.Random(seed)
    g = Graph(n)
    while g.m < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        g.add_edge(u, v)
    return g


@dataclass(frozen=True)
class OpStep:
    kind: str  # "insert" or "remove"
    u: int
    v: int


def generate_script(g: Graph, steps: int, seed: int,
                    mode: str = "mixed") -> list[OpStep]:
    """Random operation script whose preconditions hold when replayed.

    mode "mixed" flips a coin per step, "alternate" strictly interleaves
    insert/remove, "insert" and "remove" are single-kind.  When the chosen
    kind has no legal move (complete or empty graph) the other is used.
    """
    if mode not in ("mixed", "alternate", "insert", "remove"):
        raise ValueError(f"unknown script mode {mode!r}")
    rng = random.Random(seed)
    n = g.n
    edges = list(g.edges())
    edge_pos = {e: i for i, e in enumerate(edges)}
    full = n * (n - 1) // 2
    script: list[OpStep] = []
    for i in range(steps):
        if mode == "mixed":
            want_insert = rng.random() < 0.5
        elif mode == "alternate":
            want_insert = i % 2 == 0
        else:
            want_insert = mode == "insert"
        if want_insert and len(edges) == full:
            want_insert = False
        if not want_insert and not edges:
            if len(edges) == full:
                break  # n < 2: nothing to do at all
            want_insert = True
        if want_insert:
            while True:
                u = rng.randrange(n)
                v = rng.randrange(n)
                if u == v:
                    continue
                key = (u, v) if u < v else (v, u)
                if key not in edge_pos:
                    break
            edge_pos[key] = len(edges)
            edges.append(key)
            script.append(OpStep("insert", *key))
        else:
            key = edges[rng.randrange(len(edges))]
            last = edges[-1]
            pos = edge_pos.pop(key)
            edges[pos] = last
            edge_pos[last] = pos
            edges.pop()
            script.append(OpStep("remove", *key))
    return script


def sanitize_script(g0: Graph, script: list[OpStep]) -> list[OpStep]:
    """Drop steps whose preconditions fail when replayed from g0."""
    present = {e for e in g0.edges()}
    kept: list[OpStep] = []
    for step in script:
        key = (step.u, step.v) if step.u < step.v else (step.v, step.u)
        if step.u == step.v:
            continue
        if step.kind == "insert" and key not in present:
            present.add(key)
            kept.append(step)
        elif step.kind == "remove" and key in present:
            present.discard(key)
            kept.append(step)
    return kept


def _connected(g: Graph, vertices: set[int],
               extra_edge: Optional[tuple[int, int]]) -> bool:
    if len(vertices) <= 1:
        return True
    extra: dict[int, int] = {}
    if extra_edge is not None:
        a, b = extra_edge
        if a in vertices and b in vertices:
            extra = {a: b, b: a}
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in vertices and y not in seen:
                seen.add(y)
                stack.append(y)
        y = extra.get(x)
        if y is not None and y not in seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(vertices)


def check_step(g: Graph, cs: CoreState, step: OpStep,
               cores_before: list[int], stats: OpStats) -> list[str]:
    """All per-step assertions; each violation is 'category: detail'."""
    violations: list[str] = []
    expected = naive_cores(g)
    if cs.core != expected:
        bad = next(v for v in range(g.n) if cs.core[v] != expected[v])
        violations.append(
            f"core-mismatch: v{bad} has {cs.core[bad]}, oracle says {expected[bad]}"
        )
    for message in validate_quiescent(cs, g):
        violations.append(f"quiescent: {message}")

    changed = {v for v in range(g.n) if cs.core[v] != cores_before[v]}
    delta = 1 if step.kind == "insert" else -1
    for v in changed:
        if cs.core[v] - cores_before[v] != delta:
            violations.append(
                f"delta: v{v} went {cores_before[v]} -> {cs.core[v]} on {step.kind}"
            )
    if changed:
        pre = {cores_before[v] for v in changed}
        if len(pre) != 1:
            violations.append(f"locality-core: mixed pre-op cores {sorted(pre)}")
        if not _connected(g, changed, (step.u, step.v)):
            violations.append(f"locality-connected: {sorted(changed)} disconnected")
    if stats.v_star_size != len(changed):
        violations.append(
            f"stats: reported {stats.v_star_size} candidates, {len(changed)} cores changed"
        )
    if step.kind == "remove" and stats.v_plus_size != stats.v_star_size:
        violations.append(
            f"removal-bound: visited {stats.v_plus_size} != candidates {stats.v_star_size}"
        )
    return violations


def replay(g0: Graph, script: list[OpStep],
           fault_hook: Optional[FaultHook] = None,
           debug_ops: bool = False) -> tuple[list[str], int, list[OpStats]]:
    """Run a script with per-step checking.

    Returns (violations, failing_step_index, per-step stats); the index is
    -1 when the initial decomposition itself fails, len(script) on success.
    """
    g = g0.copy()
    cs = decompose(g)
    all_stats: list[OpStats] = []
    initial = [f"quiescent: {m}" for m in validate_quiescent(cs, g)]
    if cs.core != naive_cores(g):
        initial.append("core-mismatch: initial decomposition disagrees with oracle")
    if initial:
        return initial, -1, all_stats
    for i, step in enumerate(script):
        cores_before = list(cs.core)
        try:
            if step.kind == "insert":
                stats = edge_insert(g, cs, step.u, step.v, debug=debug_ops)
            else:
                stats = edge_remove(g, cs, step.u, step.v, debug=debug_ops)
        except AssertionError as exc:
            return [f"internal: {exc}"], i, all_stats
        all_stats.append(stats)
        if fault_hook is not None:
            fault_hook(g, cs, i)
        violations = check_step(g, cs, step, cores_before, stats)
        if violations:
            return violations, i, all_stats
    return [], len(script), all_stats


@dataclass
class FuzzReport:
    n: int
    m: int
    seed: int
    steps_requested: int
    steps_run: int
    violations: list[str] = field(default_factory=list)
    failing_step: Optional[int] = None
    script: list[OpStep] = field(default_factory=list)
    minimized: Optional[list[OpStep]] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return (
                f"0 violations (n={self.n} m={self.m} steps={self.steps_run} "
                f"seed={self.seed})"
            )
        lines = [
            f"{len(self.violations)} violation(s) at step {self.failing_step} "
            f"(n={self.n} m={self.m} seed={self.seed}):"
        ]
        lines += [f"  {v}" for v in self.violations]
        repro = self.minimized if self.minimized is not None else self.script
        lines.append(f"minimized reproduction ({len(repro)} steps):")
        lines += [f"  {s.kind} {s.u} {s.v}" for s in repro]
        return "\n".join(lines)


def _category(violations: list[str]) -> str:
    return violations[0].split(":", 1)[0] if violations else ""


def shrink_script(g0: Graph, script: list[OpStep], category: str,
                  fault_hook: Optional[FaultHook] = None) -> list[OpStep]:
    """Greedy minimization preserving the violation category."""
    budget = _SHRINK_BUDGET

    def fails(candidate: list[OpStep]) -> bool:
        nonlocal budget
        if budget <= 0:
            return False
        budget -= 1
        violations, _, _ = replay(g0, candidate, fault_hook)
        return _category(violations) == category

    current = script
    changed = True
    while changed and budget > 0:
        changed = False
        for i in reversed(range(len(current))):
            candidate = sanitize_script(g0, current[:i] + current[i + 1:])
            if len(candidate) < len(current) and fails(candidate):
                current = candidate
                changed = True
                break
    return current


def fuzz(n: int = 100, m: int = 300, steps: int = 500, seed: int = 0,
         mode: str = "mixed", minimize: bool = True,
         fault_hook: Optional[FaultHook] = None,
         debug_ops: bool = False) -> FuzzReport:
    """Differential fuzz run; see the module docstring for the checks.

    debug_ops additionally switches on the operations' internal self-checks
    (candidate rule, support monotonicity, in-place revalidation).
    """
    if n < 2:
        raise ValueError("fuzzing needs at least two vertices")
    g0 = random_graph(n, m, seed)
    script = generate_script(g0, steps, seed + 1, mode)
    violations, failed_at, _ = replay(g0, script, fault_hook, debug_ops)
    report = FuzzReport(
        n=n, m=m, seed=seed, steps_requested=steps,
        steps_run=failed_at if violations else len(script),
        violations=violations,
    )
    if violations:
        report.failing_step = failed_at
        report.script = script[: failed_at + 1]
        if minimize:
            report.minimized = shrink_script(
                g0, report.script, _category(violations), fault_hook
            )
    return report
