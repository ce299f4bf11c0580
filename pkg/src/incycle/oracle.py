"""Static reference algorithms used to check the incremental engines.

These are deliberately plain: depth-first search for topological order and
cycles, Tarjan's algorithm for strong components, reverse reachability for
vertex sizes. They share no code with the engines.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class StaticGraph:
    def __init__(self, n: int, arcs: Iterable[Tuple[int, int]] = ()) -> None:
        self.n = n
        self.adjacency: Dict[int, List[int]] = {v: [] for v in range(n)}
        for a, b in arcs:
            self.add_arc(a, b)

    def add_arc(self, a: int, b: int) -> None:
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise ValueError(f"arc ({a}, {b}) outside 0..{self.n - 1}")
        self.adjacency[a].append(b)

    def arcs(self):
        for a, heads in self.adjacency.items():
            for b in heads:
                yield a, b


def static_toposort(g: StaticGraph) -> Tuple[Optional[List[int]], Optional[List[int]]]:
    """Return ``(order, None)`` for an acyclic graph, else ``(None, cycle)``.

    The order is the reverse postorder of a depth-first search started from
    each vertex in decreasing id order, so unrelated vertices come out in
    increasing id order. A cycle is reported as a vertex list whose
    consecutive pairs, plus (last, first), are arcs.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * g.n
    post: List[int] = []
    for root in reversed(range(g.n)):
        if color[root] != WHITE:
            continue
        color[root] = GREY
        path = [root]
        stack = [iter(g.adjacency[root])]
        while stack:
            for nxt in stack[-1]:
                if color[nxt] == GREY:
                    return None, path[path.index(nxt):]
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    path.append(nxt)
                    stack.append(iter(g.adjacency[nxt]))
                    break
            else:
                stack.pop()
                done = path.pop()
                color[done] = BLACK
                post.append(done)
    post.reverse()
    return post, None


def tarjan_scc(g: StaticGraph) -> List[List[int]]:
    """Strong components in topological order (sources first), members sorted."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack = set()
    stack: List[int] = []
    found: List[List[int]] = []
    counter = 0
    for root in range(g.n):
        if root in index:
            continue
        work = [(root, iter(g.adjacency[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.adjacency[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == v:
                        break
                found.append(sorted(comp))
    found.reverse()
    return found


def canonical_partition(components: Iterable[Sequence[int]]) -> List[List[int]]:
    """Sort members and order components by smallest member."""
    return sorted((sorted(c) for c in components), key=lambda c: c[0])


def size_of(g: StaticGraph, v: int) -> int:
    """Number of vertices with a path to ``v``, counting ``v`` itself."""
    reverse: Dict[int, List[int]] = {x: [] for x in range(g.n)}
    for a, b in g.arcs():
        reverse[b].append(a)
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        for p in reverse[x]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return len(seen)


def all_sizes(g: StaticGraph) -> List[int]:
    return [size_of(g, v) for v in range(g.n)]


def _is_cyclic(n: int, events: Sequence[Tuple[int, int]], upto: int) -> bool:
    return static_toposort(StaticGraph(n, events[:upto]))[0] is None


def first_cycle_index(events: Sequence[Tuple[int, int]], n: Optional[int] = None) -> Optional[int]:
    """Index of the first event whose insertion makes the graph cyclic, or None.

    Cyclicity of a prefix is monotone in its length, so prefixes are tested
    by bisection with a full static check each time.
    """
    events = [tuple(e) for e in events]
    if n is None:
        n = 1 + max((max(a, b) for a, b in events), default=-1)
    if not _is_cyclic(n, events, len(events)):
        return None
    lo, hi = 0, len(events)  # prefix of length lo is acyclic, hi is cyclic
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _is_cyclic(n, events, mid):
            hi = mid
        else:
            lo = mid
    return hi - 1
