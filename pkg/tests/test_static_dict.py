import random
from bisect import bisect_left, bisect_right

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from samurai import ProbeStats, build_dict
from samurai.static_dict import PerfectHash


@pytest.fixture
def small():
    return build_dict([(2, "a"), (9, "b"), (17, "c")], 32)


def test_small_queries(small):
    assert len(small) == 3
    assert small.predecessor(10) == (9, "b")
    assert small.successor(10) == (17, "c")
    assert small.predecessor(1) is None
    assert small.successor(18) is None
    assert small.lookup(9) == "b"
    assert small.lookup(8) is None
    for p in (1, 2, 4, 8):
        assert small.predecessor_par(10, p) == small.predecessor(10)


def test_empty_dict():
    d = build_dict([], 64)
    for k in (1, 30, 64):
        assert d.predecessor(k) is None
        assert d.successor(k, p=4) is None
        assert d.lookup(k) is None


def test_bad_input():
    with pytest.raises(ValueError):
        build_dict([(3, 0), (3, 1)], 16)
    with pytest.raises(ValueError):
        build_dict([(0, 0)], 16)
    with pytest.raises(ValueError):
        build_dict([(40, 0)], 32)
    with pytest.raises(ValueError):
        build_dict([(2, 0)], 32).predecessor(33)


def test_perfect_hash_no_collisions():
    rng = random.Random(5)
    keys = rng.sample(range(10**9), 2000)
    h = PerfectHash(keys, [k * 2 for k in keys], rng)
    assert len(h) == 2000
    assert all(h.get(k) == 2 * k for k in keys)
    assert h.get(-5) is None


def scan_pred(keys, k):
    j = bisect_right(keys, k)
    return keys[j - 1] if j else None


def scan_succ(keys, k):
    j = bisect_left(keys, k)
    return keys[j] if j < len(keys) else None


def test_random_against_scan():
    rng = random.Random(11)
    U = 1 << 20
    keys = sorted(rng.sample(range(1, U + 1), 1000))
    d = build_dict([(k, -k) for k in keys], U, seed=3)
    for _ in range(10_000):
        k = rng.randint(1, U)
        pred = d.predecessor(k)
        assert (pred[0] if pred else None) == scan_pred(keys, k)
        succ = d.successor(k)
        assert (succ[0] if succ else None) == scan_succ(keys, k)
    for p in (2, 4, 8):
        for _ in range(100):
            k = rng.randint(1, U)
            pred = d.predecessor_par(k, p)
            assert (pred[0] if pred else None) == scan_pred(keys, k)


def test_same_seed_same_tables():
    pairs = [(k, k) for k in range(5, 5000, 7)]
    a, b = build_dict(pairs, 8192, seed=9), build_dict(pairs, 8192, seed=9)
    assert [lv.a for lv in a.levels] == [lv.a for lv in b.levels]


def test_parallel_search_counts_probes():
    d = build_dict([(k, k) for k in range(1, 4000, 3)], 4096)
    s1, s4 = ProbeStats(), ProbeStats()
    assert d.predecessor(2000, 1, s1) == d.predecessor(2000, 4, s4)
    assert s1.yfast_queries == s4.yfast_queries == 1
    assert s4.hash_probes >= s1.hash_probes


@settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(1, 512), max_size=120), st.integers(1, 512), st.sampled_from([1, 2, 3, 8]))
def test_property_against_scan(keyset, k, p):
    keys = sorted(keyset)
    d = build_dict([(x, x) for x in keys], 512)
    pred, succ = d.predecessor(k, p), d.successor(k, p)
    assert (pred[0] if pred else None) == scan_pred(keys, k)
    assert (succ[0] if succ else None) == scan_succ(keys, k)
    assert d.lookup(k, p) == (k if k in keyset else None)
