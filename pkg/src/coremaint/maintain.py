"""Core-number maintenance under edge insertion, removal, and batch insertion.

Orient every edge from the order-smaller endpoint to the larger one; the
vertex order is then a topological order, and between operations every
vertex satisfies deg_out <= core.  Inserting an edge can only break that
bound at the tail, so if the tail still satisfies it the operation is done.

Otherwise candidates are searched with a min-priority queue over the current
vertex order (handles compare by live label, and vertices the search
relocates are never queue residents, so heap order stays consistent).  For
each dequeued vertex w with core K:

  * deg_in(w) + deg_out(w) >  K: w may gain a core; mark it a candidate
    (black) and bump deg_in on its same-core successors (`_forward`).
  * deg_in(w) > 0 otherwise: w was reached but cannot gain; mark it visited
    (gray) and walk back evicting candidates whose support dropped to K or
    below (`_backward`).  Evicted vertices are reinserted right after w so
    the order stays a valid peel order.
  * deg_in(w) == 0 otherwise: skip; nothing it supports was touched.

When the queue drains, surviving candidates move to the head of the next
block with their core incremented.  Removal is simpler: starting from the
endpoints, a FIFO propagates "max-core degree dropped below K"; everything
reached loses exactly one core and is appended to the tail of the block
below, preserving relative order.  Batch insertion admits edges in rounds,
holding back any edge whose tail is already at its out-degree budget, and
runs the same candidate search once per round.

All operations return an `OpStats` with the search and relabel counters.
Single-writer: one maintenance operation at a time per (Graph, CoreState).
"""

from __future__ import annotations

import heapq
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .decompose import BLACK, GRAY, WHITE, CoreState, validate_quiescent
from .graph import Graph


@dataclass
class OpStats:
    """Per-operation counters.

    e_plus sums the degrees of visited vertices, e_star those of candidates.
    `rounds` counts batch admission rounds (0 for unit operations);
    `skipped` counts vertices dequeued and dismissed without inspection;
    `dropped` counts batch edges discarded as loops, duplicates, or already
    present.
    """

    v_star_size: int = 0
    v_plus_size: int = 0
    e_plus: int = 0
    e_star: int = 0
    relabels: int = 0
    rounds: int = 0
    skipped: int = 0
    dropped: int = 0
    elapsed_ns: int = 0


class _Workset:
    """Scratch state for one candidate search."""

    __slots__ = ("heap", "in_q", "v_star", "in_v_star", "v_plus", "e_plus",
                 "skipped", "dequeue_sum")

    def __init__(self, debug: bool = False):
        self.heap: list = []
        self.in_q: set[int] = set()
        self.v_star: list[int] = []          # discovery order
        self.in_v_star: set[int] = set()
        self.v_plus: list[int] = []
        self.e_plus = 0
        self.skipped = 0
        self.dequeue_sum: Optional[dict[int, int]] = {} if debug else None


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex id {v} out of range [0, {g.n})")


def _enqueue(ws: _Workset, cs: CoreState, v: int) -> None:
    if v not in ws.in_q:
        ws.in_q.add(v)
        heapq.heappush(ws.heap, cs.handle[v])


def _forward(g: Graph, cs: CoreState, ws: _Workset, w: int) -> None:
    """w becomes a candidate; its same-core successors gain support."""
    k = cs.core[w]
    cs.color[w] = BLACK
    ws.v_star.append(w)
    ws.in_v_star.add(w)
    ws.v_plus.append(w)
    ws.e_plus += len(g.adj[w])
    lw = cs.handle[w].label
    handle, core, deg_in = cs.handle, cs.core, cs.deg_in
    for x in g.adj[w]:
        if core[x] == k and handle[x].label > lw:
            deg_in[x] += 1
            _enqueue(ws, cs, x)


def _do_pre(g: Graph, cs: CoreState, ws: _Workset, r: deque, in_r: set[int],
            u: int) -> None:
    """u left the candidate pool: same-core candidate predecessors lose one
    unit of forward support."""
    k = cs.core[u]
    lu = cs.handle[u].label
    for x in g.adj[u]:
        if x in ws.in_v_star and cs.core[x] == k and cs.handle[x].label < lu:
            cs.deg_out[x] -= 1
            if cs.deg_in[x] + cs.deg_out[x] <= k and x not in in_r:
                r.append(x)
                in_r.add(x)


def _do_post(g: Graph, cs: CoreState, ws: _Workset, r: deque, in_r: set[int],
             u: int) -> None:
    """u left the candidate pool: same-core successors it was supporting
    lose one unit of backward support."""
    k = cs.core[u]
    lu = cs.handle[u].label
    for x in g.adj[u]:
        if cs.core[x] == k and cs.deg_in[x] > 0 and cs.handle[x].label > lu:
            cs.deg_in[x] -= 1
            if (x in ws.in_v_star and cs.deg_in[x] + cs.deg_out[x] <= k
                    and x not in in_r):
                r.append(x)
                in_r.add(x)


def _backward(g: Graph, cs: CoreState, ws: _Workset, w: int) -> None:
    """w is reached but cannot gain a core; evict candidates it unsupports.

    Each evicted vertex is deleted from the order and reinserted right after
    the previously placed one, starting at w, so evicted vertices end up
    behind everything that still supports them.
    """
    cs.color[w] = GRAY
    ws.v_plus.append(w)
    ws.e_plus += len(g.adj[w])
    r: deque = deque()
    in_r: set[int] = set()
    _do_pre(g, cs, ws, r, in_r, w)
    cs.deg_out[w] += cs.deg_in[w]
    cs.deg_in[w] = 0
    p = cs.handle[w]
    while r:
        u = r.popleft()
        in_r.discard(u)
        cs.color[u] = GRAY
        ws.in_v_star.discard(u)
        _do_pre(g, cs, ws, r, in_r, u)
        _do_post(g, cs, ws, r, in_r, u)
        cs.order.delete(cs.handle[u])
        cs.handle[u] = cs.order.insert_after(p, u)
        p = cs.handle[u]
        cs.deg_out[u] += cs.deg_in[u]
        cs.deg_in[u] = 0


def _drain(g: Graph, cs: CoreState, ws: _Workset) -> None:
    while ws.heap:
        item = heapq.heappop(ws.heap)
        w = item.vertex
        ws.in_q.discard(w)
        s = cs.deg_in[w] + cs.deg_out[w]
        if ws.dequeue_sum is not None and w not in ws.dequeue_sum:
            ws.dequeue_sum[w] = s
        if s > cs.core[w]:
            _forward(g, cs, ws, w)
        elif cs.deg_in[w] > 0:
            _backward(g, cs, ws, w)
        else:
            ws.skipped += 1


def _survivors(ws: _Workset) -> list[int]:
    return [w for w in ws.v_star if w in ws.in_v_star]


def _promote(cs: CoreState, survivors: Iterable[int]) -> None:
    """Move surviving candidates to the head of the next block, keeping
    discovery order, and bump their core."""
    anchors: dict[int, object] = {}
    for w in survivors:
        k = cs.core[w]
        cs.core[w] = k + 1
        cs.deg_in[w] = 0
        cs.order.delete(cs.handle[w])
        prev = anchors.get(k)
        if prev is None:
            cs.handle[w] = cs.order.insert_block_head(k + 1, w)
        else:
            cs.handle[w] = cs.order.insert_after(prev, w)
        anchors[k] = cs.handle[w]


def _reset_colors(cs: CoreState, ws: _Workset) -> None:
    for w in ws.v_plus:
        cs.color[w] = WHITE


def _debug_drain_checks(cs: CoreState, ws: _Workset) -> None:
    # Candidate rule: a traversed vertex survives iff its support exceeds
    # its core; support never grows after the first dequeue.
    for w in ws.v_plus:
        s = cs.deg_in[w] + cs.deg_out[w]
        if w in ws.in_v_star:
            assert s > cs.core[w], f"candidate v{w} with support {s}"
        else:
            assert s <= cs.core[w], f"evicted v{w} with support {s}"
    assert ws.dequeue_sum is not None
    for w, s0 in ws.dequeue_sum.items():
        s = cs.deg_in[w] + cs.deg_out[w]
        assert s <= s0, f"v{w}: support rose from {s0} to {s} after dequeue"


def _debug_quiescent(cs: CoreState, g: Graph) -> None:
    violations = validate_quiescent(cs, g)
    assert not violations, violations[0]


def edge_insert(g: Graph, cs: CoreState, u: int, v: int,
                debug: bool = False) -> OpStats:
    """Insert edge (u, v) and update cores, the order, and degree state."""
    t0 = time.perf_counter_ns()
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise ValueError(f"self-loop ({u}, {v}) cannot be inserted")
    if v in g.adj[u]:
        raise ValueError(f"edge ({u}, {v}) already present")
    relabels0 = cs.order.relabel_count

    tail = u if cs.handle[u].label < cs.handle[v].label else v
    g.add_edge(u, v)
    k = cs.core[tail]
    cs.deg_out[tail] += 1
    if cs.deg_out[tail] <= k:
        if debug:
            _debug_quiescent(cs, g)
        return OpStats(elapsed_ns=time.perf_counter_ns() - t0)

    ws = _Workset(debug)
    _enqueue(ws, cs, tail)
    _drain(g, cs, ws)
    if debug:
        _debug_drain_checks(cs, ws)
    survivors = _survivors(ws)
    e_star = sum(len(g.adj[w]) for w in survivors)
    _promote(cs, survivors)
    _reset_colors(cs, ws)
    if debug:
        _debug_quiescent(cs, g)
    return OpStats(
        v_star_size=len(survivors),
        v_plus_size=len(ws.v_plus),
        e_plus=ws.e_plus,
        e_star=e_star,
        relabels=cs.order.relabel_count - relabels0,
        skipped=ws.skipped,
        elapsed_ns=time.perf_counter_ns() - t0,
    )


def compute_mcd(cs: CoreState, g: Graph, v: int) -> int:
    """Number of v's neighbours with core >= core(v), cached per epoch."""
    if cs.mcd_epoch[v] != cs.epoch:
        cv = cs.core[v]
        cs.mcd[v] = sum(1 for w in g.adj[v] if cs.core[w] >= cv)
        cs.mcd_epoch[v] = cs.epoch
    return cs.mcd[v]


def edge_remove(g: Graph, cs: CoreState, u: int, v: int,
                debug: bool = False) -> OpStats:
    """Remove edge (u, v) and update cores, the order, and degree state.

    Every vertex reached by the search loses exactly one core, so the
    visited set and the candidate set coincide.
    """
    t0 = time.perf_counter_ns()
    _check_vertex(g, u)
    _check_vertex(g, v)
    if v not in g.adj[u]:
        raise ValueError(f"edge ({u}, {v}) not present")
    relabels0 = cs.order.relabel_count

    tail = u if cs.handle[u].label < cs.handle[v].label else v
    cs.deg_out[tail] -= 1
    g.remove_edge(u, v)
    k = min(cs.core[u], cs.core[v])
    cs.epoch += 1

    q: deque[int] = deque()
    in_q: set[int] = set()
    for w in (u, v):
        if cs.core[w] == k and w not in in_q and compute_mcd(cs, g, w) < k:
            q.append(w)
            in_q.add(w)

    v_star: list[int] = []
    in_v_star: set[int] = set()
    e_star = 0
    while q:
        w = q.popleft()
        v_star.append(w)
        in_v_star.add(w)
        e_star += len(g.adj[w])
        for x in g.adj[w]:
            if cs.core[x] == k and x not in in_v_star:
                compute_mcd(cs, g, x)  # prime the cache before decrementing
                cs.mcd[x] -= 1
                if cs.mcd[x] < k and x not in in_q:
                    q.append(x)
                    in_q.add(x)

    if v_star:
        # Candidates sink below the remaining block: edges towards
        # same-core non-candidates that used to point at a candidate flip,
        # costing those vertices one unit of forward degree.
        for w in v_star:
            lw = cs.handle[w].label
            for x in g.adj[w]:
                if (x not in in_v_star and cs.core[x] == k
                        and cs.handle[x].label < lw):
                    cs.deg_out[x] -= 1
        for w in v_star:
            cs.core[w] = k - 1
        for w in _demotion_order(g, cs, v_star, in_v_star, k):
            cs.order.delete(cs.handle[w])
            cs.handle[w] = cs.order.insert_block_tail(k - 1, w)
        for w in v_star:
            lw = cs.handle[w].label
            cs.deg_out[w] = sum(
                1 for x in g.adj[w] if cs.handle[x].label > lw
            )

    if debug:
        _debug_quiescent(cs, g)
    size = len(v_star)
    return OpStats(
        v_star_size=size,
        v_plus_size=size,
        e_plus=e_star,
        e_star=e_star,
        relabels=cs.order.relabel_count - relabels0,
        elapsed_ns=time.perf_counter_ns() - t0,
    )


def _demotion_order(g: Graph, cs: CoreState, v_star: list[int],
                    in_v_star: set[int], k: int) -> list[int]:
    """Order the demoted vertices so the result stays a valid peel order.

    Appending them in their previous relative order can leave a vertex with
    more forward neighbours than its new core k-1 allows, when enough of
    its demoted neighbours land after it.  Instead run a small peel over
    the demoted set: repeatedly release the vertex with the smallest old
    label among those whose remaining in-set neighbours plus surviving
    support (neighbours still at core >= k) fit under k-1.  If the old
    relative order is itself valid, this reproduces it.
    """
    support = {
        w: sum(1 for x in g.adj[w] if cs.core[x] >= k) for w in v_star
    }
    in_set_adj = {
        w: [x for x in g.adj[w] if x in in_v_star] for w in v_star
    }
    rem = {w: len(in_set_adj[w]) for w in v_star}
    placed: set[int] = set()
    queued: set[int] = set()
    ready: list[tuple[int, int]] = []
    for w in sorted(v_star, key=lambda w: cs.handle[w].label):
        if rem[w] + support[w] <= k - 1:
            heapq.heappush(ready, (cs.handle[w].label, w))
            queued.add(w)
    result: list[int] = []
    while ready:
        _, w = heapq.heappop(ready)
        placed.add(w)
        result.append(w)
        for x in in_set_adj[w]:
            if x not in placed:
                rem[x] -= 1
                if x not in queued and rem[x] + support[x] <= k - 1:
                    heapq.heappush(ready, (cs.handle[x].label, x))
                    queued.add(x)
    assert len(result) == len(v_star), "demotion peel stuck"
    return result


def batch_edge_insert(g: Graph, cs: CoreState, batch: Iterable[tuple[int, int]],
                      debug: bool = False) -> OpStats:
    """Insert a batch of edges, searching each affected region once per round.

    A round admits every pending edge whose tail still has out-degree
    budget (deg_out <= core); tails pushed over their core enter the queue,
    and one candidate search settles all admitted edges together.  Edges
    held back are retried next round under the updated order.  Loops,
    in-batch duplicates, and edges already present are dropped and counted.
    """
    t0 = time.perf_counter_ns()
    relabels0 = cs.order.relabel_count

    pending: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dropped = 0
    for a, b in batch:
        _check_vertex(g, a)
        _check_vertex(g, b)
        key = (a, b) if a < b else (b, a)
        if a == b or key in seen:
            dropped += 1
            continue
        seen.add(key)
        if key[1] in g.adj[key[0]]:
            dropped += 1
            continue
        pending.append(key)

    totals = OpStats(dropped=dropped)
    while pending:
        totals.rounds += 1
        ws = _Workset(debug)
        deferred: list[tuple[int, int]] = []
        for a, b in pending:
            tail = a if cs.handle[a].label < cs.handle[b].label else b
            if cs.deg_out[tail] <= cs.core[tail]:
                g.add_edge(a, b)
                cs.deg_out[tail] += 1
                if cs.deg_out[tail] == cs.core[tail] + 1:
                    _enqueue(ws, cs, tail)
            else:
                deferred.append((a, b))
        assert len(deferred) < len(pending), "batch round admitted nothing"
        pending = deferred

        _drain(g, cs, ws)
        if debug:
            _debug_drain_checks(cs, ws)
        survivors = _survivors(ws)
        totals.e_star += sum(len(g.adj[w]) for w in survivors)
        _promote(cs, survivors)
        _reset_colors(cs, ws)
        totals.v_star_size += len(survivors)
        totals.v_plus_size += len(ws.v_plus)
        totals.e_plus += ws.e_plus
        totals.skipped += ws.skipped

    if debug:
        _debug_quiescent(cs, g)
    totals.relabels = cs.order.relabel_count - relabels0
    totals.elapsed_ns = time.perf_counter_ns() - t0
    return totals
