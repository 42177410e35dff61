"""Total-order maintenance over vertices, partitioned into per-core blocks.

The order is one doubly linked list of items.  Each item carries an integer
label in ``[0, 2**64)``; comparing two labels answers "does x precede y" in
O(1).  An insertion takes the midpoint of the gap after its predecessor.
When a gap closes, labels are spread evenly over the smallest enclosing
label-aligned window that is sparse enough: a window of size ``2**i`` may be
rebalanced once it holds fewer than ``(4/3)**i`` items (density threshold
decaying geometrically with base 1.5).  This single-level scheme costs
amortized O(log n) label reassignments per insertion; ``relabel_count``
exposes the actual number so it can be reported alongside benchmarks.

Blocks are delimited by sentinel items living in the same label space, one
sentinel per core value, so inserting at a block head or tail is an ordinary
neighbour insertion and needs no auxiliary index.

Single-writer: mutations must not be issued concurrently; read-only queries
between mutations are safe from any thread.
"""

from __future__ import annotations

from typing import Iterator, Optional

LABEL_SPAN = 1 << 64

# Density threshold for a window of size 2**i is (1/T)**i with T = 3/2,
# i.e. rebalance is allowed once count * 3**i < 4**i.
_THRESH_NUM = 4
_THRESH_DEN = 3


class DuplicateVertexError(ValueError):
    """Raised when inserting a vertex that already has a live item."""


class OrderItem:
    """One slot in the total order; ``vertex is None`` marks a block sentinel.

    A handle stays valid from insertion until deletion.  Its label may be
    rewritten by a rebalance, but the relative order against every other
    live item never changes except through an explicit delete + reinsert.
    """

    __slots__ = ("vertex", "label", "prev", "next", "alive")

    def __init__(self, vertex: Optional[int], label: int = 0):
        self.vertex = vertex
        self.label = label
        self.prev: Optional[OrderItem] = None
        self.next: Optional[OrderItem] = None
        self.alive = True

    def __lt__(self, other: "OrderItem") -> bool:
        # Live position comparison; lets handles sit directly in a heap.
        return self.label < other.label

    def __repr__(self) -> str:
        kind = "sentinel" if self.vertex is None else f"v{self.vertex}"
        state = "" if self.alive else " dead"
        return f"<OrderItem {kind} label={self.label}{state}>"


class OrderList:
    """The block-partitioned total order.

    ``OrderList(h)`` builds an empty order with sentinels for blocks
    ``0..h``; ``OrderList.from_blocks(blocks)`` lays out whole blocks with
    evenly spaced labels in one pass, which is the cheap bulk path used
    right after a full decomposition.
    """

    def __init__(self, max_core_hint: int = 0):
        self._init_from_blocks([[] for _ in range(max_core_hint + 1)])

    @classmethod
    def from_blocks(cls, blocks: list[list[int]]) -> "OrderList":
        ol = cls.__new__(cls)
        ol._init_from_blocks(blocks)
        return ol

    def _init_from_blocks(self, blocks: list[list[int]]) -> None:
        if not blocks:
            blocks = [[]]
        self.relabel_count = 0
        self.insert_count = 0
        self._by_vertex: dict[int, OrderItem] = {}
        self._sentinels: list[OrderItem] = []
        self._head: Optional[OrderItem] = None
        self._tail: Optional[OrderItem] = None

        total = len(blocks) + sum(len(b) for b in blocks)
        spacing = LABEL_SPAN // (total + 1)
        label = 0
        prev: Optional[OrderItem] = None
        for block in blocks:
            label += spacing
            sentinel = OrderItem(None, label)
            prev = self._append_item(prev, sentinel)
            self._sentinels.append(sentinel)
            for v in block:
                if v in self._by_vertex:
                    raise DuplicateVertexError(f"vertex {v} listed twice")
                label += spacing
                item = OrderItem(v, label)
                prev = self._append_item(prev, item)
                self._by_vertex[v] = item

    def _append_item(self, prev: Optional[OrderItem], item: OrderItem) -> OrderItem:
        item.prev = prev
        if prev is None:
            self._head = item
        else:
            prev.next = item
        self._tail = item
        return item

    # ------------------------------------------------------------------
    # queries

    def precedes(self, x: OrderItem, y: OrderItem) -> bool:
        """True iff x comes strictly before y in the total order."""
        assert x.alive and y.alive, "order query on a deleted handle"
        return x.label < y.label

    def handle_of(self, v: int) -> OrderItem:
        return self._by_vertex[v]

    def __contains__(self, v: int) -> bool:
        return v in self._by_vertex

    def __len__(self) -> int:
        """Number of live vertex items (sentinels excluded)."""
        return len(self._by_vertex)

    @property
    def num_blocks(self) -> int:
        return len(self._sentinels)

    def sentinel(self, k: int) -> OrderItem:
        return self._sentinels[k]

    def items(self) -> Iterator[OrderItem]:
        """All live items in order, sentinels included."""
        cur = self._head
        while cur is not None:
            yield cur
            cur = cur.next

    def __iter__(self) -> Iterator[int]:
        """Vertex ids in order, sentinels skipped."""
        for item in self.items():
            if item.vertex is not None:
                yield item.vertex

    def block(self, k: int) -> Iterator[int]:
        """Vertex ids of block k in order."""
        cur = self._sentinels[k].next
        while cur is not None and cur.vertex is not None:
            yield cur.vertex
            cur = cur.next

    # ------------------------------------------------------------------
    # mutations

    def insert_after(self, x: OrderItem, v: int) -> OrderItem:
        """Insert vertex v immediately after item x; returns the new handle."""
        assert x.alive, "insert after a deleted handle"
        if v in self._by_vertex:
            raise DuplicateVertexError(f"vertex {v} already in the order")
        item = OrderItem(v)
        self._place_after(x, item)
        self._by_vertex[v] = item
        return item

    def insert_block_head(self, k: int, v: int) -> OrderItem:
        """Insert v as the new first vertex of block k."""
        self._ensure_block(k)
        return self.insert_after(self._sentinels[k], v)

    def insert_block_tail(self, k: int, v: int) -> OrderItem:
        """Append v as the new last vertex of block k."""
        self._ensure_block(k)
        if k + 1 < len(self._sentinels):
            anchor = self._sentinels[k + 1].prev
            assert anchor is not None
        else:
            anchor = self._tail
            assert anchor is not None
        return self.insert_after(anchor, v)

    def delete(self, x: OrderItem) -> None:
        """Remove a vertex item; other labels are untouched, the handle dies."""
        assert x.alive, "double delete"
        assert x.vertex is not None, "sentinels cannot be deleted"
        prev, nxt = x.prev, x.next
        assert prev is not None  # the head is always a sentinel
        prev.next = nxt
        if nxt is not None:
            nxt.prev = prev
        else:
            self._tail = prev
        x.alive = False
        x.prev = x.next = None
        del self._by_vertex[x.vertex]

    def _ensure_block(self, k: int) -> None:
        # Batch rounds can raise the maximum core by one; new sentinels go
        # at the very end, after every existing block.
        while len(self._sentinels) <= k:
            sentinel = OrderItem(None)
            assert self._tail is not None
            self._place_after(self._tail, sentinel)
            self._sentinels.append(sentinel)

    def _place_after(self, x: OrderItem, item: OrderItem) -> None:
        succ = x.next
        hi = succ.label if succ is not None else LABEL_SPAN
        if hi - x.label < 2:
            self._rebalance(x)
            succ = x.next
            hi = succ.label if succ is not None else LABEL_SPAN
        item.label = x.label + (hi - x.label) // 2
        item.prev = x
        item.next = succ
        x.next = item
        if succ is None:
            self._tail = item
        else:
            succ.prev = item
        self.insert_count += 1

    def _rebalance(self, x: OrderItem) -> None:
        """Spread labels over the smallest sparse-enough window around x."""
        for i in range(1, 65):
            size = 1 << i
            lo = x.label - (x.label % size)
            hi = lo + size
            left = x
            while left.prev is not None and left.prev.label >= lo:
                left = left.prev
            run = []
            cur: Optional[OrderItem] = left
            while cur is not None and cur.label < hi:
                run.append(cur)
                cur = cur.next
            count = len(run)
            if count * _THRESH_DEN**i < _THRESH_NUM**i or i == 64:
                gap = size // count
                assert gap >= 2, "window too dense to rebalance"
                label = lo
                for it in run:
                    it.label = label
                    label += gap
                self.relabel_count += count
                return
        raise AssertionError("unreachable: full label space is always sparse enough")
