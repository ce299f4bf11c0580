"""Strong-component maintenance on top of both cycle-detection engines.

Components are kept in a :class:`~incycle.dsu.DisjointSets`; levels,
indices, counts, bounds and arc sets are stored per canonical vertex. Arcs
keep their original endpoints, so an arc whose ends have since merged (dead)
or that repeats a component pair already seen by the current search is
dropped when a search meets it. A :class:`~incycle.dsu.PairMatrix` records
which component pairs the current insertion has already handled.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from .dense import BucketHeap, scale_count
from .dsu import DisjointSets, PairMatrix
from .graph import (
    ACCEPTED,
    NOOP,
    InsertionOutcome,
    TraversalCounters,
    UsageError,
    components_merged,
)
from .sparse import ideal_delta

ArcKey = Tuple[int, int]


class _SccBase:
    name = "scc"

    def __init__(self, n: int, matrix_mode: str) -> None:
        if n < 0:
            raise UsageError("vertex count must be non-negative")
        self.sets = DisjointSets(n)
        self.level: List[int] = [1] * n
        self.matrix = PairMatrix(n, matrix_mode)
        self.counters = TraversalCounters()
        self.components_created = n
        self.merges = 0
        self._seen: Set[ArcKey] = set()

    @property
    def n(self) -> int:
        return len(self.level)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.level):
            raise UsageError(f"unknown vertex {v}")

    def find(self, v: int) -> int:
        return self.sets.find(v)

    def components_snapshot(self) -> List[List[int]]:
        """Components as sorted member lists, ordered by smallest member."""
        return self.sets.groups()

    def component_level(self, v: int) -> int:
        return self.level[self.sets.find(v)]

    def arcs(self):
        """Every distinct arc inserted so far, including ones inside components."""
        return iter(self._seen)


class SccSparseEngine(_SccBase):
    """Strong components with the two-way-search numbering.

    For every inserted arc (x, y) with ends in different components, the
    (level, index) key of find(x) is below that of find(y).
    """

    name = "scc-sparse"

    def __init__(self, n: int = 0, m_hint: Optional[int] = None, matrix_mode: str = "auto") -> None:
        super().__init__(n, matrix_mode)
        self.index: List[int] = [v - n for v in range(n)]
        self.index_floor = -n
        self.out: List[Dict[ArcKey, None]] = [{} for _ in range(n)]
        self.ins: List[Dict[ArcKey, None]] = [{} for _ in range(n)]
        self.m_hint = m_hint
        self.delta = ideal_delta(n, m_hint) if m_hint else 1
        self.max_backward_arcs = 0
        self.last_backward_arcs = 0

    def order_key(self, v: int) -> Tuple[int, int]:
        c = self.sets.find(v)
        return self.level[c], self.index[c]

    def _adapt_delta(self) -> None:
        m = len(self._seen)
        if m & (m - 1) == 0:
            candidate = ideal_delta(len(self.level), m)
            if candidate >= 2 * self.delta:
                self.delta = candidate

    def insert(self, v: int, w: int) -> InsertionOutcome:
        self._check_vertex(v)
        self._check_vertex(w)
        self.last_backward_arcs = 0
        if v == w or (v, w) in self._seen:
            return NOOP
        self._seen.add((v, w))
        self._adapt_delta()
        find = self.sets.find
        u, z = find(v), find(w)
        if u == z:
            return NOOP
        level, index = self.level, self.index
        outcome = ACCEPTED
        if (level[u], index[u]) > (level[z], index[z]):
            outcome = self._restore(u, z)
            u, z = find(v), find(w)
        if u != z:
            self.out[u][(v, w)] = None
            if level[u] == level[z]:
                self.ins[z][(v, w)] = None
        return outcome

    def _restore(self, u: int, z: int) -> InsertionOutcome:
        find = self.sets.find
        level, ins, out = self.level, self.ins, self.out
        matrix = self.matrix
        counters = self.counters
        delta = self.delta

        parent: Dict[int, int] = {u: u, z: z}
        marked: Set[int] = set()
        back: List[int] = []
        preds: Dict[int, List[int]] = {}
        dead: List[ArcKey] = []
        arcs = 0
        traversals = 0
        aborted = False

        # Backward search from u over same-level in-arcs.
        stack = [(u, iter(ins[u]))]
        while stack:
            t, it = stack[-1]
            pushed = False
            for arc in it:
                traversals += 1
                fx, fy = find(arc[0]), find(arc[1])
                if fx == fy or matrix.test_and_set(fx, fy):
                    dead.append(arc)
                    continue
                arcs += 1
                if arcs >= delta:
                    aborted = True
                    break
                preds.setdefault(fy, []).append(fx)
                if fx == z:
                    marked.add(z)
                if fx in marked:
                    c = fy
                    while c not in marked:
                        marked.add(c)
                        if c == u:
                            break
                        c = parent[c]
                if fx not in parent:
                    parent[fx] = fy
                    stack.append((fx, iter(ins[fx])))
                    pushed = True
                    break
            if aborted:
                break
            if not pushed:
                stack.pop()
                back.append(t)
        counters.arc_traversals += traversals
        self.max_backward_arcs = max(self.max_backward_arcs, arcs)
        self.last_backward_arcs = arcs
        for x, y in dead:
            ins[find(y)].pop((x, y), None)
            out[find(x)].pop((x, y), None)

        forward: List[int] = []
        run_forward = True
        if aborted:
            counters.backward_aborts += 1
            level[z] = level[u] + 1
            ins[z] = {}
            counters.level_increases += 1
            back = []
            marked = set()
            parent = {z: z}
            matrix.reset()
        elif level[z] != level[u]:
            level[z] = level[u]
            ins[z] = {}
            counters.level_increases += 1
        else:
            run_forward = False

        if run_forward:
            on_back = set(back)
            kz = level[z]
            dead = []
            traversals = 0
            stack = [(z, iter(out[z]))]
            while stack:
                t, it = stack[-1]
                pushed = False
                for arc in it:
                    traversals += 1
                    fx, fy = find(arc[0]), find(arc[1])
                    if fx == fy:
                        dead.append(arc)
                        continue
                    if fy == u or fy in on_back:
                        c = fy
                        while c not in marked:
                            marked.add(c)
                            if c == u:
                                break
                            c = parent[c]
                    if fy in marked:
                        c = fx
                        while c not in marked:
                            marked.add(c)
                            if c == z:
                                break
                            c = parent[c]
                    ky = level[fy]
                    if ky < kz:
                        parent[fy] = fx
                        level[fy] = kz
                        ins[fy] = {arc: None}
                        counters.level_increases += 1
                        stack.append((fy, iter(out[fy])))
                        pushed = True
                        break
                    if ky == kz:
                        ins[fy][arc] = None
                if not pushed:
                    stack.pop()
                    forward.append(t)
            counters.arc_traversals += traversals
            forward.reverse()
            for arc in dead:
                out[find(arc[0])].pop(arc, None)

        # Parent-chain marking misses backward vertices that are reachable
        # from a vertex marked only after they were searched; sweep B in its
        # topological order along the arcs the backward search kept.
        if marked:
            for b in back:
                if b not in marked and any(p in marked for p in preds.get(b, ())):
                    marked.add(b)

        order_list = back + forward
        outcome = ACCEPTED
        if z in marked:
            members = sorted(marked)
            self._unite(z, members)
            order_list = [x for x in order_list if x == z or x not in marked]
            outcome = components_merged(members, z)

        floor = self.index_floor
        index = self.index
        for x in reversed(order_list):
            floor -= 1
            index[x] = floor
        self.index_floor = floor
        counters.reindex_moves += len(order_list)
        matrix.reset()
        return outcome

    def _unite(self, z: int, members: List[int]) -> None:
        out, ins = self.out, self.ins
        big_out = max(members, key=lambda c: len(out[c]))
        big_in = max(members, key=lambda c: len(ins[c]))
        merged_out, merged_in = out[big_out], ins[big_in]
        for c in members:
            if c != big_out:
                merged_out.update(out[c])
            if c != big_in:
                merged_in.update(ins[c])
            out[c] = {}
            ins[c] = {}
            if c != z:
                self.sets.link(z, c)
        out[z], ins[z] = merged_out, merged_in
        self.merges += 1
        self.components_created += 1


class SccDenseEngine(_SccBase):
    """Strong components with size-bounded levels (one cycle search, one update pass)."""

    name = "scc-dense"

    def __init__(self, n: int = 0, matrix_mode: str = "auto") -> None:
        super().__init__(n, matrix_mode)
        scales = scale_count(n)
        self.bound: List[List[int]] = [[0] * scales for _ in range(n)]
        self.count: List[List[int]] = [[0] * scales for _ in range(n)]
        self.out: List[BucketHeap] = [BucketHeap() for _ in range(n)]

    def insert(self, v: int, w: int) -> InsertionOutcome:
        self._check_vertex(v)
        self._check_vertex(w)
        if v == w or (v, w) in self._seen:
            return NOOP
        self._seen.add((v, w))
        find = self.sets.find
        u, z = find(v), find(w)
        if u == z:
            return NOOP
        level = self.level
        if level[u] < level[z]:
            self.out[u].insert((v, w), level[z])
            return ACCEPTED

        counters = self.counters
        heaps = self.out
        ku = level[u]

        # Cycle search: lift everything below ku reachable from z up to ku.
        # Arcs are taken depth-first so that a component is finished before
        # any arc into it is examined again.
        pending = [(v, w)]
        replay: deque = deque()
        marked = {u}
        parent: Dict[int, int] = {}
        traversals = 0
        while pending:
            arc = pending.pop()
            replay.append(arc)
            traversals += 1
            fx, fy = find(arc[0]), find(arc[1])
            if fy in marked:
                c = fx
                while c not in marked:
                    marked.add(c)
                    c = parent[c]
            if level[fy] < ku:
                level[fy] = ku
                parent[fy] = fx
                counters.level_increases += 1
                pending.extend(heaps[fy].extract_upto(ku))

        outcome = ACCEPTED
        if z in marked:
            members = sorted(marked)
            self._unite(z, members)
            outcome = components_merged(members, z)

        # Update pass over every arc the cycle search touched.
        # The pair matrix admits one arc per component pair; that arc may be
        # traversed again later in the pass, any other arc of the pair is dropped.
        bound, count, matrix = self.bound, self.count, self.matrix
        first_arc: Dict[Tuple[int, int], ArcKey] = {}
        resets = 0
        while replay:
            arc = replay.popleft()
            fx, fy = find(arc[0]), find(arc[1])
            if fx == fy:
                continue
            if matrix.test_and_set(fx, fy):
                if first_arc[fx, fy] != arc:
                    continue
            else:
                first_arc[fx, fy] = arc
            traversals += 1
            kx, ky = level[fx], level[fy]
            if kx >= ky:
                ky = kx + 1
                level[fy] = ky
                counters.level_increases += 1
            else:
                i = (ky - kx).bit_length() - 1
                cy = count[fy]
                if i >= len(cy):
                    cy.extend([0] * (i + 1 - len(cy)))
                    bound[fy].extend([0] * (i + 1 - len(bound[fy])))
                c = cy[i] + 1
                if c == 3 << (i + 1):
                    cy[i] = 0
                    resets += 1
                    by = bound[fy]
                    jump = by[i] + 3 * (1 << i)
                    if jump > ky:
                        ky = jump
                        level[fy] = ky
                        counters.level_increases += 1
                    by[i] = ky - (2 << i)
                else:
                    cy[i] = c
            replay.extend(heaps[fy].extract_upto(ky))
            heaps[fx].insert(arc, ky)
        matrix.reset()
        counters.arc_traversals += traversals
        counters.counter_resets += resets
        return outcome

    def _unite(self, z: int, members: List[int]) -> None:
        heaps = self.out
        big = max(members, key=lambda c: len(heaps[c].buckets))
        merged = heaps[big]
        for c in members:
            if c != big:
                merged.meld(heaps[c])
            if c != z:
                heaps[c] = BucketHeap()
                self.sets.link(z, c)
        heaps[z] = merged
        self.merges += 1
        self.components_created += 1
