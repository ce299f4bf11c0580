"""Two-way-search incremental cycle detection for sparse graphs.

Each vertex carries a positive level and a negative index; lexicographic
order on (level, index) is a topological order while the graph is acyclic.
An out-of-order arc (v, w) triggers a depth-first backward search from v
that stays inside v's level and stops after ``delta`` arc traversals, then
a forward search from w that raises every vertex it visits to w's level.
Vertices touched by either search get fresh indices, smaller than any index
handed out before.

Total time is O(min(m^(1/2), n^(2/3)) * m) for m insertions.
"""

from __future__ import annotations

import math
from typing import Dict, Iterator, List, Optional, Tuple

from ._order import LevelOrder
from .graph import (
    ACCEPTED,
    NOOP,
    InsertionOutcome,
    PoisonedEngineError,
    TraversalCounters,
    UsageError,
    cycle_found,
)


def ceil_sqrt(m: int) -> int:
    return 0 if m <= 0 else math.isqrt(m - 1) + 1


def ceil_two_thirds_power(n: int) -> int:
    """Smallest integer t with t**3 >= n**2, i.e. ceil(n ** (2/3)) without float error."""
    if n <= 0:
        return 0
    target = n * n
    t = max(1, round(n ** (2.0 / 3.0)))
    while t ** 3 < target:
        t += 1
    while t > 1 and (t - 1) ** 3 >= target:
        t -= 1
    return t


def ideal_delta(n: int, m: int) -> int:
    """Backward-search budget min(ceil(sqrt(m)), ceil(n^(2/3))), at least 1."""
    return max(1, min(ceil_sqrt(m), ceil_two_thirds_power(n)))


class SparseEngine:
    """Incremental cycle detection and topological ordering by two-way search.

    >>> eng = SparseEngine(3)
    >>> eng.insert(2, 0).kind.value
    'accepted'
    >>> eng.topological_order()
    [2, 0, 1]
    >>> eng.insert(0, 2).witness
    (2, 0)
    """

    name = "sparse"

    def __init__(self, n: int = 0, m_hint: Optional[int] = None) -> None:
        if n < 0:
            raise UsageError("vertex count must be non-negative")
        self.level: List[int] = [1] * n
        self.index: List[int] = [v - n for v in range(n)]
        self.index_floor = -n
        # Arc sets are dicts used as insertion-ordered sets.
        self.out: List[Dict[int, None]] = [{} for _ in range(n)]
        self.ins: List[Dict[int, None]] = [{} for _ in range(n)]
        self.m_hint = m_hint
        self.delta = ideal_delta(n, m_hint) if m_hint else 1
        self.arc_count = 0
        self.counters = TraversalCounters()
        self.max_backward_arcs = 0
        self.last_backward_arcs = 0  # budgeted arcs of the latest backward search
        self.last_reindexed: List[int] = []
        self.poisoned: Optional[InsertionOutcome] = None
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
        return self.level[v], self.index[v]

    def topological_order(self) -> List[int]:
        self._check_live()
        return self._order.to_list()

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for x, heads in enumerate(self.out):
            for y in heads:
                yield x, y

    def add_vertex(self) -> int:
        self._check_live()
        v = len(self.level)
        self.index_floor -= 1
        self.level.append(1)
        self.index.append(self.index_floor)
        self.out.append({})
        self.ins.append({})
        self._order.push_front(1, v)
        n = v + 1
        if n & (n - 1) == 0:
            self._adapt_delta()
        return v

    def _adapt_delta(self) -> None:
        # Replace delta only when the recomputed value has at least doubled.
        candidate = ideal_delta(len(self.level), self.arc_count)
        if candidate >= 2 * self.delta:
            self.delta = candidate

    def _store(self, v: int, w: int) -> None:
        self.out[v][w] = None
        if self.level[v] == self.level[w]:
            self.ins[w][v] = None
        self.arc_count += 1
        m = self.arc_count
        if m & (m - 1) == 0:
            self._adapt_delta()

    def insert(self, v: int, w: int) -> InsertionOutcome:
        """Insert arc (v, w); report a cycle if it closes one."""
        self._check_live()
        self._check_vertex(v)
        self._check_vertex(w)
        if v == w:
            self.poisoned = cycle_found([v])
            return self.poisoned
        self.last_backward_arcs = 0
        if w in self.out[v]:
            return NOOP
        level, index = self.level, self.index
        if level[v] < level[w] or (level[v] == level[w] and index[v] < index[w]):
            self._store(v, w)
            return ACCEPTED
        witness = self._restore_order(v, w)
        if witness is not None:
            self.poisoned = cycle_found(witness)
            return self.poisoned
        self._store(v, w)
        return ACCEPTED

    def _restore_order(self, v: int, w: int) -> Optional[List[int]]:
        """Searches and re-indexing for an out-of-order arc; returns a witness on a cycle."""
        level, ins, out = self.level, self.ins, self.out
        counters = self.counters
        delta = self.delta

        # Backward search from v within its level.
        marked = {v}
        bparent: Dict[int, int] = {}
        back: List[int] = []
        arcs = 0
        aborted = False
        traversals = 0
        stack = [(v, iter(ins[v]))]
        while stack:
            y, it = stack[-1]
            pushed = False
            for x in it:
                traversals += 1
                if x == w:
                    counters.arc_traversals += traversals
                    self.max_backward_arcs = max(self.max_backward_arcs, arcs)
                    self.last_backward_arcs = arcs
                    witness = [w, y]
                    while y != v:
                        y = bparent[y]
                        witness.append(y)
                    return witness
                arcs += 1
                if arcs >= delta:
                    aborted = True
                    break
                if x not in marked:
                    marked.add(x)
                    bparent[x] = y
                    stack.append((x, iter(ins[x])))
                    pushed = True
                    break
            if aborted:
                break
            if not pushed:
                stack.pop()
                back.append(y)
        counters.arc_traversals += traversals
        self.last_backward_arcs = arcs
        if arcs > self.max_backward_arcs:
            self.max_backward_arcs = arcs

        forward: List[int] = []
        if aborted:
            counters.backward_aborts += 1
            level[w] = level[v] + 1
            ins[w] = {}
            counters.level_increases += 1
            back = []
            marked = set()
        elif level[w] != level[v]:
            level[w] = level[v]
            ins[w] = {}
            counters.level_increases += 1
        else:
            marked = None  # no forward search

        if marked is not None:
            # Forward search from w over arcs into lower levels.
            kw = level[w]
            fparent: Dict[int, int] = {}
            traversals = 0
            stack = [(w, iter(out[w]))]
            while stack:
                x, it = stack[-1]
                pushed = False
                for y in it:
                    traversals += 1
                    if y == v or y in marked:
                        counters.arc_traversals += traversals
                        path = [x]
                        while x != w:
                            x = fparent[x]
                            path.append(x)
                        path.reverse()
                        path.append(y)
                        while y != v:
                            y = bparent[y]
                            path.append(y)
                        return path
                    ky = level[y]
                    if ky < kw:
                        level[y] = kw
                        ins[y] = {x: None}
                        fparent[y] = x
                        counters.level_increases += 1
                        stack.append((y, iter(out[y])))
                        pushed = True
                        break
                    if ky == kw:
                        ins[y][x] = None
                if not pushed:
                    stack.pop()
                    forward.append(x)
            counters.arc_traversals += traversals
            forward.reverse()

        # Re-index B & F back to front with fresh, decreasing indices.
        order_list = back + forward
        index, order = self.index, self._order
        floor = self.index_floor
        for x in reversed(order_list):
            floor -= 1
            index[x] = floor
            order.push_front(level[x], x)
        self.index_floor = floor
        counters.reindex_moves += len(order_list)
        self.last_reindexed = order_list
        return None
