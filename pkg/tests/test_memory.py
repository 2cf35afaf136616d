import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scrambler.memory import RedundantStore, make_layout


def brute_addr(i, j, stride, r_max):
    # walk the blocks one physical word at a time
    addr = 0
    for g in range(i // stride):
        addr += stride * r_max
    addr += j * stride
    addr += i % stride
    return addr


def test_layout_examples():
    lay = make_layout(40, 20, 11)
    assert lay.addr(0, 0) == 0
    assert lay.addr(0, 1) == 20
    assert lay.addr(25, 2) == 265
    assert lay.capacity == 440


@pytest.mark.parametrize(
    "args", [(0, 1, 11), (10, 0, 11), (30, 20, 11), (20, 20, 4), (20, 20, 1)]
)
def test_layout_rejects(args):
    with pytest.raises(ValueError):
        make_layout(*args)


@pytest.mark.parametrize("n_cells, stride, r_max", [(1000, 20, 11), (60, 3, 5), (7, 1, 3)])
def test_layout_injective_and_strided(n_cells, stride, r_max):
    lay = make_layout(n_cells, stride, r_max)
    table = lay.address_table()
    assert table.shape == (n_cells, r_max)
    assert len(np.unique(table)) == n_cells * r_max
    assert table.min() == 0 and table.max() == lay.capacity - 1
    assert (np.diff(table, axis=1) == stride).all()
    for i in range(0, n_cells, max(1, n_cells // 37)):
        for j in range(r_max):
            assert lay.addr(i, j) == table[i, j] == brute_addr(i, j, stride, r_max)


def test_addr_out_of_range():
    lay = make_layout(20, 20)
    with pytest.raises(IndexError):
        lay.addr(20, 0)
    with pytest.raises(IndexError):
        lay.addr(0, 11)


def store(n_cells=40, stride=20, k=3, scrub=True):
    return RedundantStore(make_layout(n_cells, stride), k, scrub=scrub)


def put(s, cell, values):
    for a, v in zip(s.replica_addresses(cell), values):
        s.memory[a] = v


def test_write_replicates():
    s = store()
    s.write(0, 0xDEADBEEF)
    lay = s.layout
    assert [s.memory[lay.addr(0, j)] for j in range(3)] == [0xDEADBEEF] * 3
    out = s.read(0)
    assert (out.value, out.m) == (0xDEADBEEF, 3)
    assert s.counters.replica_accesses == 6


def test_write_repairs_corruption():
    s = store(k=5)
    put(s, 3, [1, 2, 3, 4, 5])
    s.write(3, 42)
    assert s.replicas(3) == [42] * 5


def test_read_unanimous():
    s = store()
    put(s, 1, [7, 7, 7])
    out = s.read(1)
    assert (out.value, out.m, out.ok) == (7, 3, True)


def test_read_scrubs_minority():
    s = store(k=5)
    put(s, 2, [7, 7, 7, 9, 4])
    out = s.read(2)
    assert (out.value, out.m) == (7, 3)
    assert s.replicas(2) == [7] * 5


def test_read_without_scrub_leaves_minority():
    s = store(k=5, scrub=False)
    put(s, 2, [7, 7, 7, 9, 4])
    assert s.read(2).value == 7
    assert s.replicas(2) == [7, 7, 7, 9, 4]


def test_failed_read_leaves_memory():
    s = store()
    put(s, 0, [1, 2, 3])
    out = s.read(0)
    assert (out.value, out.m, out.ok) == (None, 1, False)
    assert s.replicas(0) == [1, 2, 3]
    assert s.counters.read_failures == 1
    assert s.counters.reads_at_redundancy[3] == 1


def test_read_out_of_range():
    s = store()
    with pytest.raises(IndexError):
        s.read(40)
    with pytest.raises(IndexError):
        s.write(-1, 0)


def test_set_redundancy():
    s = store()
    s.set_redundancy(5)
    s.set_redundancy(3)
    assert s.active_redundancy == 3
    for bad in (13, 4, 1):
        with pytest.raises(ValueError):
            s.set_redundancy(bad)


def test_increase_fills_lazily_on_scrubbed_read():
    s = store()
    s.write(4, 99)
    s.set_redundancy(5)
    lay = s.layout
    # new replicas are untouched until the cell is next read
    assert s.memory[lay.addr(4, 3)] == 0
    out = s.read(4)
    assert (out.value, out.m, out.k) == (99, 3, 3)
    assert s.replicas(4) == [99] * 5
    assert s.read(4).m == 5


def test_unfilled_replicas_do_not_vote():
    s = store()
    s.write(4, 99)
    s.set_redundancy(5)
    lay = s.layout
    # garbage in the not-yet-materialized replicas cannot outvote real data
    s.memory[lay.addr(4, 3)] = 5
    s.memory[lay.addr(4, 4)] = 5
    s.memory[lay.addr(4, 2)] = 5
    assert s.read(4).value == 99


def test_decrease_then_increase_does_not_trust_stale_replicas():
    s = store(k=5)
    s.write(0, 10)
    s.set_redundancy(3)
    s.write(0, 11)  # replicas 3, 4 still hold 10
    s.set_redundancy(5)
    out = s.read(0)
    assert (out.value, out.k) == (11, 3)
    assert s.replicas(0) == [11] * 5


@pytest.mark.parametrize("k", [3, 5, 7])
def test_fault_tolerance_bound(k):
    n = (k - 1) // 2
    for size in range(n + 1):
        for subset in itertools.combinations(range(k), size):
            for bad_equal in (False, True):
                s = store(k=k, scrub=False)
                s.write(0, 1234)
                for t, j in enumerate(subset):
                    s.memory[s.layout.addr(0, j)] = 77 if bad_equal else 1000 + t
                assert s.read(0).value == 1234


@given(st.lists(st.integers(0, 3), min_size=7, max_size=7))
def test_scrub_idempotent(values):
    s = store(k=7)
    put(s, 5, values)
    first = s.read(5)
    second = s.read(5)
    assert second.value == first.value
    if first.ok:
        assert second.m == 7
    else:
        assert second == first


ops = st.lists(
    st.one_of(
        st.tuples(st.just("w"), st.integers(0, 39), st.integers(0, 5)),
        st.tuples(st.just("r"), st.integers(0, 39), st.just(0)),
        st.tuples(st.just("k"), st.sampled_from([3, 5, 7, 9, 11]), st.just(0)),
        st.tuples(st.just("x"), st.integers(0, 439), st.integers(1, 0xFFFFFFFF)),
    ),
    max_size=200,
)


@settings(max_examples=100)
@given(ops, st.booleans())
def test_counter_consistency(seq, scrub):
    s = store(scrub=scrub)
    reads = 0
    for op, a, b in seq:
        if op == "w":
            s.write(a, b)
        elif op == "r":
            s.read(a)
            reads += 1
        elif op == "k":
            s.set_redundancy(a)
        else:
            s.memory.xor(a, b)
        assert s.active_redundancy in (3, 5, 7, 9, 11)
    c = s.counters
    assert c.total_reads == reads
    assert c.read_failures <= reads
    assert c.replica_accesses >= sum(k * r for k, r in c.reads_at_redundancy.items())
