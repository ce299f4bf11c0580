"""One-way-search incremental cycle detection for dense graphs.

Levels form a weak topological numbering that never exceeds vertex size
(the number of vertices that can reach a vertex). Inserting an arc queues it
for traversal; traversing (x, y) either lifts y above x or, when y is already
higher, bumps a per-scale count for y. When a count fills up, y's level jumps
to the scale's bound plus 3 * 2**scale. Out-arcs live in bucket heaps keyed by
the head's level at storage time, so an arc is only re-examined once its tail
catches up with that priority.

Total time is O(n^2 log n) for any number of insertions.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterator, List, Optional, Tuple

from ._order import LevelOrder
from .graph import (
    ACCEPTED,
    InsertionOutcome,
    PoisonedEngineError,
    TraversalCounters,
    UsageError,
    cycle_found,
)


def scale_count(n: int) -> int:
    """Number of count/bound scales, floor(lg n) + 1 (one for n <= 1)."""
    return max(n, 1).bit_length()


class BucketHeap:
    """Monotone bucket priority queue of arcs.

    Buckets are a dict from priority to item list. ``low`` is the smallest
    possibly nonempty bucket; extraction only scans upward from it. ``floor``
    is one more than the largest threshold extracted so far and never
    decreases. ``low`` may drop back (counted in ``watermark_resets``) when an
    item lands in a gap it had skipped, but never below ``floor`` when the
    heap is used as the engines use it.
    """

    __slots__ = ("buckets", "low", "floor", "watermark_resets")

    def __init__(self) -> None:
        self.buckets: Dict[int, list] = {}
        self.low = 0
        self.floor = 0
        self.watermark_resets = 0

    def __len__(self) -> int:
        return sum(len(b) for b in self.buckets.values())

    def __bool__(self) -> bool:
        return bool(self.buckets)

    def insert(self, item, priority: int) -> None:
        if priority < self.low:
            # The item falls in a gap that extraction skipped over.
            self.low = priority
            self.watermark_resets += 1
        bucket = self.buckets.get(priority)
        if bucket is None:
            self.buckets[priority] = [item]
        else:
            bucket.append(item)

    def extract_upto(self, p: int) -> list:
        """Remove and return every item with priority <= p, lowest priority first."""
        if p >= self.floor:
            self.floor = p + 1
        low = self.low
        if p < low:
            return []
        buckets = self.buckets
        if not buckets:
            self.low = p + 1
            return []
        taken = None
        if p - low > len(buckets):
            keys = sorted(q for q in buckets if q <= p)
        else:
            keys = [q for q in range(low, p + 1) if q in buckets]
        for q in keys:
            bucket = buckets.pop(q)
            if taken is None:
                taken = bucket  # popped lists are reused, not copied
            else:
                taken.extend(bucket)
        low = p + 1
        if buckets and low not in buckets:
            # Short gaps are stepped over; long ones fall back to a scan of the keys.
            for _ in range(8):
                low += 1
                if low in buckets:
                    break
            else:
                low = min(buckets)
        self.low = low
        return taken if taken is not None else []

    def meld(self, other: "BucketHeap") -> None:
        """Move every item of ``other`` into this heap."""
        for q, items in other.buckets.items():
            bucket = self.buckets.get(q)
            if bucket is None:
                self.buckets[q] = items
            else:
                bucket.extend(items)
        self.low = min(self.low, other.low)
        self.floor = min(self.floor, other.floor)
        self.watermark_resets += other.watermark_resets
        other.buckets = {}

    def items(self) -> Iterator[Tuple[int, object]]:
        for q, bucket in self.buckets.items():
            for item in bucket:
                yield q, item


class DenseEngine:
    """Incremental cycle detection with levels bounded by vertex size.

    Besides levels, each vertex has a distinct tie-breaking index; (level,
    index) order is a topological order and is kept as an explicit list.
    Set ``record_wraps`` to log every count wrap as
    ``(vertex, scale, old_bound, new_bound, level_before, level_after)``.
    """

    name = "dense"

    def __init__(self, n: int = 0, record_wraps: bool = False) -> None:
        if n < 0:
            raise UsageError("vertex count must be non-negative")
        scales = scale_count(n)
        self.level: List[int] = [1] * n
        self.tie: List[int] = [v - n for v in range(n)]
        self.tie_floor = -n
        self.bound: List[List[int]] = [[0] * scales for _ in range(n)]
        self.count: List[List[int]] = [[0] * scales for _ in range(n)]
        self.out: List[BucketHeap] = [BucketHeap() for _ in range(n)]
        self.scales = scales
        self.counters = TraversalCounters()
        self.poisoned: Optional[InsertionOutcome] = None
        self.wrap_log: Optional[list] = [] if record_wraps else None
        self._order = LevelOrder(n)

    @property
    def n(self) -> int:
        return len(self.level)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.level):
            raise UsageError(f"unknown vertex {v}")

    def _check_live(self) -> None:
        if self.poisoned is not None:
            raise PoisonedEngineError("engine stopped after reporting a cycle")

    def order_key(self, v: int) -> Tuple[int, int]:
        self._check_vertex(v)
        return self.level[v], self.tie[v]

    def topological_order(self) -> List[int]:
        self._check_live()
        return self._order.to_list()

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for x, heap in enumerate(self.out):
            for _, y in heap.items():
                yield x, y

    def add_vertex(self) -> int:
        self._check_live()
        v = len(self.level)
        scales = scale_count(v + 1)
        if scales > self.scales:
            extra = scales - self.scales
            for row in self.bound:
                row.extend([0] * extra)
            for row in self.count:
                row.extend([0] * extra)
            self.scales = scales
        self.tie_floor -= 1
        self.level.append(1)
        self.tie.append(self.tie_floor)
        self.bound.append([0] * scales)
        self.count.append([0] * scales)
        self.out.append(BucketHeap())
        self._order.push_front(1, v)
        return v

    def insert(self, v: int, w: int) -> InsertionOutcome:
        """Insert arc (v, w) and run traversal steps until none are pending."""
        if self.poisoned is not None:
            self._check_live()
        level = self.level
        if not (0 <= v < len(level) and 0 <= w < len(level)):
            self._check_vertex(v)
            self._check_vertex(w)
        if v == w:
            self.poisoned = cycle_found([v])
            return self.poisoned
        level, bound, count, heaps = self.level, self.bound, self.count, self.out
        counters = self.counters
        wrap_log = self.wrap_log
        parent: Dict[int, int] = {}
        tie = self.tie
        tie_floor = self.tie_floor
        push_front = self._order.push_front
        # Pending arcs are queued in batches sharing a tail, in FIFO order.
        # A batch's tail cannot change level while the batch is processed.
        pending = deque([(v, [w])])
        traversals = resets = increases = 0
        try:
            while pending:
                x, heads = pending.popleft()
                traversals += len(heads)
                kx = level[x]
                hx = heaps[x]
                xbuckets = hx.buckets
                for y in heads:
                    if y == v:
                        traversals -= len(heads) - heads.index(v) - 1
                        path = [x]
                        while x != v:
                            x = parent[x]
                            path.append(x)
                        path.reverse()
                        self.poisoned = cycle_found(path[1:] + [v])
                        return self.poisoned
                    ky = level[y]
                    if kx >= ky:
                        ky = kx + 1
                        level[y] = ky
                        parent[y] = x
                        increases += 1
                        tie_floor -= 1
                        tie[y] = tie_floor
                        push_front(ky, y)
                        hy = heaps[y]
                        if hy.buckets and ky >= hy.low:
                            pending.append((y, hy.extract_upto(ky)))
                    else:
                        i = (ky - kx).bit_length() - 1
                        cy = count[y]
                        if i >= len(cy):
                            # Only reachable while a cycle-forming insertion pushes levels past n.
                            cy.extend([0] * (i + 1 - len(cy)))
                            bound[y].extend([0] * (i + 1 - len(bound[y])))
                        c = cy[i] + 1
                        if c == 6 << i:  # 3 * 2**(i+1)
                            cy[i] = 0
                            resets += 1
                            by = bound[y]
                            old_bound = by[i]
                            before = ky
                            jump = old_bound + (3 << i)
                            if jump > ky:
                                ky = jump
                                level[y] = ky
                                parent[y] = x
                                increases += 1
                                tie_floor -= 1
                                tie[y] = tie_floor
                                push_front(ky, y)
                                hy = heaps[y]
                                if hy.buckets and ky >= hy.low:
                                    pending.append((y, hy.extract_upto(ky)))
                            by[i] = ky - (2 << i)
                            if wrap_log is not None:
                                wrap_log.append((y, i, old_bound, by[i], before, ky))
                        else:
                            cy[i] = c
                    # A head whose level did not change has nothing due in its heap:
                    # it was emptied up to that level, and later arcs went in above it.
                    # Inlined BucketHeap.insert.
                    bucket = xbuckets.get(ky)
                    if bucket is None:
                        xbuckets[ky] = [y]
                        if ky < hx.low:
                            hx.low = ky
                            hx.watermark_resets += 1
                    else:
                        bucket.append(y)
        finally:
            self.tie_floor = tie_floor
            counters.arc_traversals += traversals
            counters.counter_resets += resets
            counters.level_increases += increases
        return ACCEPTED
