"""Small checks shared by several test modules."""

from incycle.oracle import StaticGraph, size_of


def sparse_violations(engine, arcs):
    """Arcs whose tail does not precede the head in (level, index) order."""
    key = engine.order_key
    return [(a, b) for a, b in arcs if not key(a) < key(b)]


def dense_violations(engine, arcs):
    level = engine.level
    return [(a, b) for a, b in arcs if not level[a] < level[b]]


def list_respects(order, arcs):
    pos = {v: i for i, v in enumerate(order)}
    return all(pos[a] < pos[b] for a, b in arcs)


def size_violations(n, arcs, level_of):
    g = StaticGraph(n, arcs)
    return [v for v in range(n) if level_of(v) > size_of(g, v)]


def replay_first_cycle(engine, events):
    for idx, (a, b) in enumerate(events):
        outcome = engine.insert(a, b)
        if outcome.is_cycle:
            return idx, outcome.witness
    return None, None
