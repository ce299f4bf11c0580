import pytest
from hypothesis import given
from hypothesis import strategies as st

from incycle.dsu import DisjointSets, PairMatrix


def test_singletons_and_link():
    ds = DisjointSets(4)
    assert ds.find(3) == 3
    ds.link(1, 2)
    assert ds.find(2) == 1
    assert ds.find(ds.find(2)) == ds.find(2)


def test_chained_links_keep_first_name():
    ds = DisjointSets(3)
    ds.link(0, 1)
    ds.link(0, 2)
    assert [ds.find(v) for v in range(3)] == [0, 0, 0]


def test_name_survives_rank_loss():
    ds = DisjointSets(4)
    ds.link(1, 2)  # rank 1 tree named 1
    ds.link(3, 1)  # rank-0 tree wins the name
    assert {ds.find(v) for v in (1, 2, 3)} == {3}
    assert ds.is_canonical(3) and not ds.is_canonical(1)


def test_bad_links():
    ds = DisjointSets(3)
    ds.link(0, 1)
    with pytest.raises(ValueError):
        ds.link(1, 2)
    with pytest.raises(ValueError):
        ds.link(2, 2)
    with pytest.raises(KeyError):
        ds.find(9)


def test_add_and_groups():
    ds = DisjointSets(2)
    assert ds.add() == 2
    ds.link(2, 0)
    assert ds.groups() == [[0, 2], [1]]
    assert sorted(ds.canonicals()) == [1, 2]


@given(st.integers(1, 40), st.lists(st.tuples(st.integers(0, 39), st.integers(0, 39)), max_size=80))
def test_matches_naive_partition(n, pairs):
    ds = DisjointSets(n)
    label = list(range(n))
    for a, b in pairs:
        a, b = a % n, b % n
        x, y = ds.find(a), ds.find(b)
        if x == y:
            continue
        ds.link(x, y)
        old = label[b]
        label = [label[a] if lab == old else lab for lab in label]
        assert ds.find(a) == x and ds.find(b) == x
    for v in range(n):
        assert ds.find(ds.find(v)) == ds.find(v)
        for u in range(n):
            assert (ds.find(u) == ds.find(v)) == (label[u] == label[v])


@pytest.mark.parametrize("mode", ["bitset", "hashed"])
def test_pair_matrix(mode):
    m = PairMatrix(10, mode)
    assert not m.test_and_set(2, 3)
    assert m.test_and_set(2, 3)
    assert not m.get(3, 2)
    m.test_and_set(9, 9)
    assert m.set_count() == 2
    assert m.reset() == 2
    assert m.is_clear() and not m.get(2, 3)


def test_pair_matrix_modes():
    assert PairMatrix(100).mode == "bitset"
    assert PairMatrix(PairMatrix.BITSET_LIMIT + 1).mode == "hashed"
    with pytest.raises(ValueError):
        PairMatrix(3, "dense")


@given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=50))
def test_pair_matrix_reset_touches_only_set_bits(pairs):
    m = PairMatrix(16, "bitset")
    distinct = set()
    for a, b in pairs:
        assert m.test_and_set(a, b) == ((a, b) in distinct)
        distinct.add((a, b))
    assert m.reset() == len(distinct)
    assert m.is_clear()
