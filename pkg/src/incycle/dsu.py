"""Disjoint sets with designated canonical elements, and the pair bit matrix."""

from __future__ import annotations

from typing import Dict, Iterable, List


class DisjointSets:
    """Union by rank with path compression, over elements ``0..n-1``.

    ``link(x, y)`` always leaves ``x`` as the canonical element of the union,
    whichever tree root wins the rank comparison. The tree root and the
    canonical name are kept apart through ``_name`` (root -> canonical) and
    ``_root`` (canonical -> root).

    >>> ds = DisjointSets(3)
    >>> ds.link(2, 0)
    >>> ds.find(0), ds.find(1), ds.find(2)
    (2, 1, 2)
    """

    def __init__(self, n: int = 0) -> None:
        self._parent: List[int] = list(range(n))
        self._rank: List[int] = [0] * n
        self._name: List[int] = list(range(n))
        self._root: Dict[int, int] = {v: v for v in range(n)}
        self.links = 0

    def __len__(self) -> int:
        return len(self._parent)

    def add(self) -> int:
        x = len(self._parent)
        self._parent.append(x)
        self._rank.append(0)
        self._name.append(x)
        self._root[x] = x
        return x

    def _find_root(self, x: int) -> int:
        parent = self._parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def find(self, x: int) -> int:
        if not 0 <= x < len(self._parent):
            raise KeyError(f"unknown element {x}")
        return self._name[self._find_root(x)]

    def is_canonical(self, x: int) -> bool:
        return x in self._root

    def link(self, x: int, y: int) -> None:
        """Unite the sets named ``x`` and ``y``; the union is named ``x``."""
        if x == y or x not in self._root or y not in self._root:
            raise ValueError(f"link needs two distinct canonical elements, got {x}, {y}")
        rx, ry = self._root.pop(x), self._root.pop(y)
        if self._rank[rx] < self._rank[ry]:
            rx, ry = ry, rx
        elif self._rank[rx] == self._rank[ry]:
            self._rank[rx] += 1
        self._parent[ry] = rx
        self._name[rx] = x
        self._root[x] = rx
        self.links += 1

    def canonicals(self) -> Iterable[int]:
        return self._root.keys()

    def groups(self) -> List[List[int]]:
        """Partition as sorted member lists, ordered by smallest member."""
        by_name: Dict[int, List[int]] = {}
        for v in range(len(self._parent)):
            by_name.setdefault(self.find(v), []).append(v)
        return sorted(by_name.values(), key=lambda g: g[0])


class PairMatrix:
    """Bit per ordered vertex pair with a journal for resetting only set bits.

    ``mode`` is ``"bitset"`` (packed n*n bits), ``"hashed"`` (a set of pairs)
    or ``"auto"``, which picks the bitset up to n = 8192.
    """

    BITSET_LIMIT = 8192

    def __init__(self, n: int, mode: str = "auto") -> None:
        if mode == "auto":
            mode = "bitset" if n <= self.BITSET_LIMIT else "hashed"
        if mode not in ("bitset", "hashed"):
            raise ValueError(f"unknown PairMatrix mode {mode!r}")
        self.mode = mode
        self.n = n
        self._journal: List[int] = []
        self._bits = bytearray((n * n + 7) // 8) if mode == "bitset" else None
        self._pairs = set() if mode == "hashed" else None

    def test_and_set(self, a: int, b: int) -> bool:
        """Set bit (a, b); return whether it was already set."""
        pos = a * self.n + b
        if self._bits is None:
            if pos in self._pairs:
                return True
            self._pairs.add(pos)
        else:
            byte, mask = pos >> 3, 1 << (pos & 7)
            if self._bits[byte] & mask:
                return True
            self._bits[byte] |= mask
        self._journal.append(pos)
        return False

    def get(self, a: int, b: int) -> bool:
        pos = a * self.n + b
        if self._bits is None:
            return pos in self._pairs
        return bool(self._bits[pos >> 3] & (1 << (pos & 7)))

    def set_count(self) -> int:
        return len(self._journal)

    def reset(self) -> int:
        """Clear every set bit; returns how many were cleared."""
        cleared = len(self._journal)
        if self._bits is None:
            self._pairs.clear()
        else:
            bits = self._bits
            for pos in self._journal:
                bits[pos >> 3] &= ~(1 << (pos & 7)) & 0xFF
        self._journal.clear()
        return cleared

    def is_clear(self) -> bool:
        if self._bits is None:
            return not self._pairs
        return not any(self._bits)
