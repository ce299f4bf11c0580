"""Deterministic arc-stream generators.

Two adversarial constructions drive the engines toward their worst-case
traversal counts; two seeded random generators feed the property tests.

Randomness comes from :class:`random.Random` (MT19937) seeded with the
given 64-bit seed. Only ``shuffle``, ``sample`` and ``randrange`` are used,
whose output for a given seed is fixed across platforms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import List, Tuple

from .graph import Arc, ArcStream, UsageError
from .sparse import ceil_sqrt, ideal_delta

SEED_LIMIT = 1 << 64


def _rng(seed: int) -> random.Random:
    if not 0 <= seed < SEED_LIMIT:
        raise UsageError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return random.Random(seed)


def _clique(first: int, size: int) -> List[Arc]:
    return [Arc(i, j) for i in range(first, first + size) for j in range(i + 1, first + size)]


@dataclass
class SparseAdversaryPlan:
    n: int
    m: int
    delta: int
    main_size: int
    anchor_size: int
    anchors: List[int] = field(default_factory=list)  # first vertex of each anchor clique

    @property
    def anchor_count(self) -> int:
        return len(self.anchors)


def sparse_adversary_plan(n: int, m: int) -> SparseAdversaryPlan:
    """Clique sizes and anchor placement for :func:`gen_sparse_adversary`.

    Anchor cliques need at least ``delta`` arcs each, so their size is the
    smallest r with r(r-1)/2 >= delta (up to one extra vertex).
    """
    delta = ideal_delta(n, m)
    main = math.isqrt(m) // 2
    anchor = ceil_sqrt(2 * delta) + 1
    plan = SparseAdversaryPlan(n, m, delta, main, anchor)
    used = main * (main - 1) // 2
    per_anchor = anchor * (anchor - 1) // 2
    first = main
    while first + anchor <= n and used + per_anchor <= m // 2:
        plan.anchors.append(first)
        used += per_anchor
        first += anchor
    return plan


def gen_sparse_adversary(n: int, m: int) -> ArcStream:
    """Insertion sequence forcing the sparse engine into Theta(delta * m) work.

    A main clique on the first vertices, then a run of anchor cliques. Arcs
    from each anchor clique into the previous one push the previous clique a
    level up through aborted backward searches; finally one arc from each
    anchor clique into the main clique makes a forward search sweep the
    whole main clique again.
    """
    if n < 64:
        raise UsageError("sparse adversary needs n >= 64")
    if m < 2 * n or m > n * (n - 1) // 2:
        raise UsageError(f"sparse adversary needs 2n <= m <= n(n-1)/2, got n={n}, m={m}")
    plan = sparse_adversary_plan(n, m)
    size = plan.anchor_size
    arcs = _clique(0, plan.main_size)
    for first in plan.anchors:
        arcs.extend(_clique(first, size))
    k = plan.anchor_count
    # anchors[j - 1] is anchor clique j in increasing topological order.
    for j in range(k - 1, 0, -1):
        source = plan.anchors[j] + size - 1
        target_first = plan.anchors[j - 1]
        for head in range(target_first + size - 1, target_first - 1, -1):
            arcs.append(Arc(source, head))
    for j in range(k - 2, 0, -1):
        arcs.append(Arc(plan.anchors[j - 1], 0))
    if len(arcs) > m:
        raise AssertionError("sparse adversary exceeded its arc budget")
    return ArcStream(arcs, n, len(arcs))


@dataclass
class DenseAdversaryLayout:
    r: int
    chain: List[int]
    groups: List[List[int]]  # groups[j] has 3 * 2**(j+1) vertices
    targets: List[int]
    phase_starts: List[int] = field(default_factory=list)  # event offset of phase i at index i-2

    @property
    def n(self) -> int:
        return len(self.chain) + sum(map(len, self.groups)) + len(self.targets)


def dense_adversary_layout(r: int) -> DenseAdversaryLayout:
    if r < 8 or r & (r - 1):
        raise UsageError(f"dense adversary needs r a power of two >= 8, got {r}")
    lg = r.bit_length() - 1
    chain = list(range(r))
    groups = []
    nxt = r
    for j in range(lg - 1):  # j = 0 .. lg(r) - 2
        size = 3 * (2 << j)
        groups.append(list(range(nxt, nxt + size)))
        nxt += size
    targets = list(range(nxt, nxt + r))
    return DenseAdversaryLayout(r, chain, groups, targets)


def gen_dense_adversary(r: int, layout: DenseAdversaryLayout = None) -> ArcStream:
    """Insertion sequence making the dense engine do Theta(n^2 log n) traversals.

    A chain u_1..u_r fixes levels 1..r. In phase i every target gets lifted to
    level i; for each scale j where i = c * 2**j with c >= 3, the group S_j is
    lifted so that all its arcs into the targets are traversed once more,
    filling count j of every target without raising it. Pass ``layout`` to
    receive the phase offsets.
    """
    lay = layout if layout is not None else dense_adversary_layout(r)
    if lay.r != r:
        raise UsageError("layout does not match r")
    u = lay.chain  # u_i is u[i - 1]
    arcs = [Arc(u[i], u[i + 1]) for i in range(r - 1)]
    lay.phase_starts = []
    for i in range(2, r + 1):
        lay.phase_starts.append(len(arcs))
        arcs.extend(Arc(u[i - 2], t) for t in lay.targets)
        for j, group in enumerate(lay.groups):
            step = 1 << j
            if i % step or i // step < 3:
                continue
            if i // step == 3:
                source = u[(2 << j) - 2]  # u_{2^(j+1) - 1}
                arcs.extend(Arc(source, s) for s in group)
                arcs.extend(Arc(s, t) for s in group for t in lay.targets)
            else:
                source = u[i - step - 2]  # u_{i - 2^j - 1}
                arcs.extend(Arc(source, s) for s in group)
    return ArcStream(arcs, lay.n, len(arcs))


def _pair_from_index(p: int) -> Tuple[int, int]:
    """Map 0 <= p < n(n-1)/2 onto pairs (i, j), i < j, row by row in j."""
    j = (1 + math.isqrt(1 + 8 * p)) // 2
    return p - j * (j - 1) // 2, j


def gen_random_dag_stream(n: int, m: int, seed: int) -> ArcStream:
    """m distinct arcs, all forward in a random vertex permutation, in random order."""
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise UsageError(f"need 0 <= m <= n(n-1)/2 = {total}, got m={m}")
    rng = _rng(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = []
    for p in rng.sample(range(total), m):
        a, b = _pair_from_index(p)
        arcs.append(Arc(perm[a], perm[b]))
    return ArcStream(arcs, n, m)


def gen_random_stream(n: int, m: int, seed: int) -> ArcStream:
    """m distinct loop-free arcs drawn uniformly without replacement."""
    total = n * (n - 1)
    if not 0 <= m <= total:
        raise UsageError(f"need 0 <= m <= n(n-1) = {total}, got m={m}")
    rng = _rng(seed)
    arcs = []
    for p in rng.sample(range(total), m):
        a, b = divmod(p, n - 1)
        arcs.append(Arc(a, b + (b >= a)))
    return ArcStream(arcs, n, m)
