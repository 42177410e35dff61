"""Undirected simple graph over dense integer ids, with edge-list I/O.

Adjacency is one hash set per vertex, so membership tests and removals are
O(1) expected.  The text format is whitespace-separated "u v" pairs, one per
line, lines starting with '#' ignored (SNAP-compatible).  Loading compacts
arbitrary non-negative ids to 0..n-1 in first-appearance order; the original
ids are kept on the graph for reporting.
"""

from __future__ import annotations

import random
from typing import IO, Iterable, Iterator

# An ordered batch of undirected edges, as (u, v) pairs.
EdgeBatch = list[tuple[int, int]]


class ParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Simple undirected graph: no self-loops, no parallel edges."""

    __slots__ = ("adj", "m", "original_ids")

    def __init__(self, n: int = 0):
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        self.original_ids: list[int] | None = None

    @property
    def n(self) -> int:
        return len(self.adj)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.adj):
            raise ValueError(f"vertex id {v} out of range [0, {len(self.adj)})")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self.adj[u]

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge (u, v); returns False (no-op) on loops and duplicates."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v or v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1
        return True

    def remove_edge(self, u: int, v: int) -> bool:
        """Remove edge (u, v); returns False if it was not present."""
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self.adj[u]:
            return False
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1
        return True

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max(map(len, self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in deterministic order."""
        for u, neighbours in enumerate(self.adj):
            for v in sorted(neighbours):
                if u < v:
                    yield (u, v)

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = [set(a) for a in self.adj]
        g.m = self.m
        g.original_ids = list(self.original_ids) if self.original_ids else None
        return g


def load_edge_list(stream: IO[str] | Iterable[str]) -> Graph:
    """Parse an edge-list stream into a Graph.

    Self-loops are dropped, duplicate edges deduplicated, and vertex ids
    compacted to 0..n-1 preserving first-appearance order.  An empty stream
    yields the empty graph.
    """
    id_map: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    originals: list[int] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(line_no, f"expected two ids, got {len(tokens)} tokens")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer token in {tokens!r}") from None
        if a < 0 or b < 0:
            raise ParseError(line_no, f"negative vertex id in {tokens!r}")
        for orig in (a, b):
            if orig not in id_map:
                id_map[orig] = len(id_map)
                originals.append(orig)
        if a != b:
            pairs.append((id_map[a], id_map[b]))

    g = Graph(len(id_map))
    g.original_ids = originals
    for u, v in pairs:
        g.add_edge(u, v)
    return g


def dump_edge_list(g: Graph, stream: IO[str]) -> None:
    """Write the graph as "u v" lines, u < v, ascending."""
    for u, v in g.edges():
        stream.write(f"{u} {v}\n")


def sample_edges(g: Graph, count: int, seed: int) -> list[tuple[int, int]]:
    """Uniformly sample `count` distinct existing edges, fixed by `seed`."""
    if count > g.m:
        raise ValueError(f"cannot sample {count} edges from a graph with m={g.m}")
    rng = random.Random(seed)
    return rng.sample(list(g.edges()), count)
