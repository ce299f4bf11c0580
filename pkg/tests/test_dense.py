import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import dense_violations, list_respects, replay_first_cycle, size_violations
from incycle.dense import BucketHeap, DenseEngine, scale_count
from incycle.graph import Outcome, PoisonedEngineError, UsageError, is_valid_witness
from incycle.oracle import first_cycle_index
from incycle.workloads import gen_random_dag_stream, gen_random_stream


def test_new_scales():
    e = DenseEngine(4)
    assert e.scales == 3
    assert e.bound == [[0, 0, 0]] * 4 and e.count == [[0, 0, 0]] * 4
    assert DenseEngine(1).scales == 1
    empty = DenseEngine(0)
    assert empty.n == 0 and empty.topological_order() == []


def test_initial_state():
    e = DenseEngine(3)
    assert e.level == [1, 1, 1]
    assert e.tie == [-3, -2, -1]
    assert e.topological_order() == [0, 1, 2]


def test_first_arc_trace():
    e = DenseEngine(2)
    assert e.insert(0, 1).kind is Outcome.ACCEPTED
    assert e.level == [1, 2]
    assert e.out[0].buckets == {2: [1]}
    assert not e.out[1]


def test_two_cycle():
    e = DenseEngine(2)
    e.insert(0, 1)
    out = e.insert(1, 0)
    assert out.is_cycle and out.witness == (0, 1)
    with pytest.raises(PoisonedEngineError):
        e.insert(0, 1)


def test_triangle_levels_and_order():
    e = DenseEngine(3)
    for a, b in [(0, 1), (1, 2), (0, 2)]:
        assert e.insert(a, b).kind is Outcome.ACCEPTED
    assert e.level == [1, 2, 3]
    assert dense_violations(e, e.arcs()) == []
    assert e.topological_order() == [0, 1, 2]


def test_chain_order():
    e = DenseEngine(3)
    e.insert(0, 1)
    e.insert(1, 2)
    assert e.topological_order() == [0, 1, 2] and e.level == [1, 2, 3]


def test_step_counts_scale_one():
    e = DenseEngine(8)
    e.level[0], e.level[1] = 1, 4
    e.insert(0, 1)
    assert e.count[1][1] == 1
    assert e.level[1] == 4
    assert e.counters.level_increases == 0


def test_step_raises_head():
    e = DenseEngine(8)
    e.level[0], e.level[1] = 5, 3
    e.insert(0, 1)
    assert e.level[1] == 6
    assert e.counters.level_increases == 1


def test_step_wrap_rule():
    e = DenseEngine(8, record_wraps=True)
    e.level[0], e.level[1] = 1, 2
    e.count[1][0] = 5
    e.insert(0, 1)
    assert e.count[1][0] == 0
    assert e.level[1] == 3
    assert e.bound[1][0] == 1
    assert e.wrap_log == [(1, 0, 0, 1, 2, 3)]
    assert e.counters.counter_resets == 1


def test_self_loop_and_unknown_vertex():
    e = DenseEngine(2)
    with pytest.raises(UsageError):
        e.insert(0, 4)
    assert e.insert(1, 1).witness == (1,)
    with pytest.raises(PoisonedEngineError):
        e.topological_order()


def test_duplicate_arcs_tolerated():
    e = DenseEngine(3)
    for a, b in [(0, 1), (0, 1), (1, 2), (0, 1)]:
        assert not e.insert(a, b).is_cycle
    assert dense_violations(e, e.arcs()) == []


def test_add_vertex_scales_follow_floor_lg():
    e = DenseEngine(0)
    assert e.scales == 1
    sizes = []
    for _ in range(8):
        e.add_vertex()
        sizes.append(e.scales)
    assert sizes == [scale_count(n) for n in range(1, 9)] == [1, 2, 2, 3, 3, 3, 3, 4]
    assert all(len(row) == e.scales for row in e.count + e.bound)


def test_add_vertex_preserves_state():
    e = DenseEngine(3)
    e.insert(0, 1)
    e.insert(1, 2)
    snapshot = (list(e.level), [list(r) for r in e.bound], [list(r) for r in e.count])
    v = e.add_vertex()
    assert v == 3 and e.level[3] == 1
    assert e.level[:3] == snapshot[0]
    assert [r[: len(s)] for r, s in zip(e.bound, snapshot[1])] == snapshot[1]
    assert len(set(e.tie)) == 4
    assert e.topological_order()[0] == 3


# bucket heap


def test_heap_empty_extract():
    h = BucketHeap()
    assert h.extract_upto(10) == []


def test_heap_extract_advances_low():
    h = BucketHeap()
    h.insert("a", 2)
    h.insert("b", 5)
    assert h.extract_upto(3) == ["a"]
    assert h.low == 5
    assert len(h) == 1


def test_heap_threshold_below_low():
    h = BucketHeap()
    h.insert("a", 2)
    assert h.extract_upto(1) == []
    assert h.low == 2
    assert h.extract_upto(1) == []
    assert h.low == 2


def test_heap_order_and_meld():
    h, g = BucketHeap(), BucketHeap()
    for item, p in [("c", 4), ("a", 1), ("b", 1), ("d", 9)]:
        h.insert(item, p)
    g.insert("e", 3)
    h.meld(g)
    assert not g
    assert h.extract_upto(5) == ["a", "b", "e", "c"]
    assert sorted(h.items()) == [(9, "d")]


def test_heap_low_reset_counted():
    h = BucketHeap()
    h.insert("a", 5)
    h.extract_upto(7)
    h.insert("b", 3)
    assert h.watermark_resets == 1 and h.low == 3
    assert h.extract_upto(3) == ["b"]


def test_heap_low_steps_back_into_skipped_gap_but_floor_holds():
    h = BucketHeap()
    h.insert("a", 2)
    h.insert("b", 9)
    assert h.extract_upto(3) == ["a"]
    assert (h.low, h.floor) == (9, 4)
    h.insert("c", 5)  # above the floor, inside the skipped gap
    assert (h.low, h.floor, h.watermark_resets) == (5, 4, 1)
    assert h.extract_upto(6) == ["c"]
    assert h.floor == 7


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), max_size=40), st.integers(0, 35))
def test_heap_extract_is_exact(entries, p):
    h = BucketHeap()
    for i, (prio, _) in enumerate(entries):
        h.insert(i, prio)
    got = h.extract_upto(p)
    want = [i for _, i in sorted((prio, i) for i, (prio, _) in enumerate(entries) if prio <= p)]
    assert got == want
    assert all(q > p for q, _ in h.items())


# properties


@st.composite
def dag_streams(draw, max_n=30, max_m=150):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(0, min(max_m, n * (n - 1) // 2)))
    return gen_random_dag_stream(n, m, draw(st.integers(0, 2**64 - 1)))


@settings(max_examples=60, deadline=None)
@given(dag_streams())
def test_invariants_on_dags(stream):
    n = stream.n
    e = DenseEngine(n, record_wraps=True)
    stored = []
    for a, b in stream:
        assert not e.insert(a, b).is_cycle
        stored.append((a, b))
        assert dense_violations(e, stored) == []
        assert max(e.level) < 2 * n
        for v in range(n):
            assert all(0 <= c < 3 << (i + 1) for i, c in enumerate(e.count[v]))
            assert all(b < 2 * n for b in e.bound[v])
    for heap in e.out:
        assert all(q >= heap.floor for q, _ in heap.items())
    for y, i, old, new, _, _ in e.wrap_log:
        assert new - old >= 1 << i
    assert list_respects(e.topological_order(), stored)
    assert e.topological_order() == sorted(range(n), key=e.order_key)


@settings(max_examples=40, deadline=None)
@given(dag_streams(max_n=20, max_m=80))
def test_level_at_most_size(stream):
    e = DenseEngine(stream.n)
    stored = []
    for a, b in stream:
        e.insert(a, b)
        stored.append((a, b))
        assert size_violations(stream.n, stored, e.level.__getitem__) == []


@st.composite
def any_streams(draw, max_n=30):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(1, min(120, n * (n - 1))))
    return gen_random_stream(n, m, draw(st.integers(0, 2**64 - 1)))


@settings(max_examples=80, deadline=None)
@given(any_streams())
def test_first_cycle_matches_oracle(stream):
    idx, witness = replay_first_cycle(DenseEngine(stream.n), stream.events)
    assert idx == first_cycle_index(stream.events, stream.n)
    if idx is not None:
        assert is_valid_witness(witness, set(stream.events[: idx + 1]), trigger=stream.events[idx])
        assert witness[0] == stream.events[idx][1] and witness[-1] == stream.events[idx][0]


@settings(max_examples=20, deadline=None)
@given(any_streams())
def test_deterministic(stream):
    runs = []
    for _ in range(2):
        e = DenseEngine(stream.n)
        res = replay_first_cycle(e, stream.events)
        runs.append((res, e.level, e.bound, e.count, e.counters.as_dict()))
    assert runs[0] == runs[1]


def test_traversals_within_n2_log_envelope():
    # Measured constant: the densest random DAGs stay under 2 * n^2 * (lg n + 1).
    for n in (20, 40, 80):
        s = gen_random_dag_stream(n, n * (n - 1) // 2, n)
        e = DenseEngine(n)
        for a, b in s:
            e.insert(a, b)
        assert e.counters.arc_traversals <= 2 * n * n * (scale_count(n))
