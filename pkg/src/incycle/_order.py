"""Doubly-linked vertex list kept in (level, index) order.

Every level owns a sentinel node, so a vertex that receives a new index
smaller than all others on its level is moved in O(1) by splicing it in
right after that level's sentinel. Links live in flat lists: vertex ``v``
is node ``2v`` and the sentinel of level ``L`` is node ``2L + 1``.
"""

from __future__ import annotations

from typing import Iterator, List

_END = -1  # next of the last node
_FREE = -2  # prev of a node that is not linked


class LevelOrder:
    def __init__(self, vertices: int = 0) -> None:
        size = 2 * max(vertices, 1) + 2
        self._next: List[int] = [_END] * size
        self._prev: List[int] = [_FREE] * size
        self._top = 1
        first = 3  # sentinel of level 1 heads the list
        self._prev[first] = _END
        self._last = first
        for v in range(vertices):
            self._append(2 * v)

    def _grow(self, node: int) -> None:
        extra = node + 1 - len(self._next)
        if extra > 0:
            extra = max(extra, len(self._next))
            self._next.extend([_END] * extra)
            self._prev.extend([_FREE] * extra)

    def _append(self, node: int) -> None:
        last = self._last
        self._next[last] = node
        self._prev[node] = last
        self._next[node] = _END
        self._last = node

    def _ensure_level(self, level: int) -> None:
        self._grow(2 * level + 1)
        while self._top < level:
            self._top += 1
            self._append(2 * self._top + 1)

    def push_front(self, level: int, v: int) -> None:
        """Move (or add) ``v`` to the front of ``level``."""
        node = 2 * v
        if level > self._top:
            self._ensure_level(level)
        if node >= len(self._next):
            self._grow(node)
        nxt_of, prv_of = self._next, self._prev
        prv = prv_of[node]
        if prv != _FREE:
            nxt = nxt_of[node]
            nxt_of[prv] = nxt
            if nxt == _END:
                self._last = prv
            else:
                prv_of[nxt] = prv
        anchor = 2 * level + 1
        nxt = nxt_of[anchor]
        nxt_of[anchor] = node
        prv_of[node] = anchor
        nxt_of[node] = nxt
        if nxt == _END:
            self._last = node
        else:
            prv_of[nxt] = node

    def __iter__(self) -> Iterator[int]:
        nxt_of = self._next
        node = nxt_of[3]
        while node != _END:
            if not node & 1:
                yield node >> 1
            node = nxt_of[node]

    def to_list(self) -> List[int]:
        return list(self)
