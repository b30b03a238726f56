import math
import random
from bisect import bisect_right

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from samurai import EMPTY, Engine, Interval, PramConfig, ProbeStats, parallel_binary_search
from samurai.oracle import naive_interval
from samurai.parallel_engine import WORKERS_ENV, WorkerPool, WriteConflict, occurrences, split_lengths


@pytest.fixture(scope="module")
def banana():
    with Engine.build("banana", delta=2) as e:
        yield e


def test_parallel_binary_search_examples():
    vals = [1, 3, 5, 7, 9, 11, 13, 15]
    assert parallel_binary_search(vals, 8, PramConfig(4)) == 4
    assert parallel_binary_search(vals, 8, 1) == 4
    assert parallel_binary_search([], 3, 4) == 0
    assert parallel_binary_search(vals, 0, 3) == 0
    assert parallel_binary_search(vals, 99, 3) == 8


def test_parallel_binary_search_random():
    rng = random.Random(2)
    for _ in range(10_000):
        vals = sorted(rng.choices(range(50), k=rng.randint(0, 30)))
        target = rng.randint(-1, 51)
        p = rng.choice((2, 3, 8))
        assert parallel_binary_search(vals, target, p) == bisect_right(vals, target)


def test_search_rounds_shrink_with_p():
    vals = list(range(10_000))
    rounds = []
    for p in (1, 3, 15):
        st_ = ProbeStats()
        parallel_binary_search(vals, 4321, p, st_)
        rounds.append(st_.search_rounds)
    # each round cuts the range by a factor p + 1
    assert rounds[0] <= math.ceil(math.log2(10_001))
    assert rounds[2] <= math.ceil(math.log(10_001, 16)) + 1
    assert rounds[0] > rounds[1] > rounds[2]


def test_split_lengths():
    assert split_lengths(10, 4) == [3, 3, 2, 2]
    assert split_lengths(3, 3) == [1, 1, 1]


def test_locate_exact_examples(banana):
    for p in range(1, 6):
        assert banana.locate_exact("anana", p=p) == Interval(4, 4)
    idx = banana.idx
    assert banana.locate_exact("banana", p=4) == Interval(idx.isa[1], idx.isa[1])
    stats = ProbeStats()
    assert banana.locate_exact("nan", p=2, stats=stats) == Interval(7, 7)
    assert stats.merge_rounds == 1
    assert banana.locate_exact("", p=3) == idx.full
    assert banana.locate_exact("naz", p=2) == EMPTY


def test_occurrences(banana):
    idx = banana.idx
    assert occurrences(idx, Interval(3, 4)) == [2, 4]
    assert occurrences(idx, EMPTY) == []
    assert occurrences(idx, idx.full) == list(range(1, 8))
    assert banana.find("ana", p=2) == [2, 4]


def test_merge_rounds_match_tree_height():
    e = Engine.build("abcabcabbacbacbbabcabca" * 4, delta=4)
    pat = e.idx.text[3:40]
    for p in (1, 2, 3, 4, 5, 7, 8, 16):
        stats = ProbeStats()
        e.locate_exact(pat, p=p, stats=stats, encoded=True)
        assert stats.merge_rounds == math.ceil(math.log2(p))
        assert sum(stats.merges_per_round) == sum(
            math.ceil(min(p, 37) / 2 ** k) // 2 + math.ceil(min(p, 37) / 2 ** k) % 2
            for k in range(stats.merge_rounds))
    e.close()


def test_config_precedence(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert PramConfig.from_env().p == 3
    assert PramConfig.from_env(5).p == 5
    monkeypatch.delenv(WORKERS_ENV)
    assert PramConfig.from_env().p >= 1
    with pytest.raises(ValueError):
        PramConfig(0)


def test_debug_writes_detects_conflicts():
    pool = WorkerPool(2)
    try:
        assert pool.run_round([lambda: 1, lambda: 2], track=True) == [1, 2]
        shared = [0]

        def mutate():
            shared[0] += 1
            return 0
        with pytest.raises(WriteConflict):
            pool.run_round([mutate, mutate], track=True, guard=lambda: tuple(shared))
    finally:
        pool.close()


def test_debug_mode_engine_runs_clean():
    with Engine.build("mississippi", delta=2, cfg=PramConfig(4, debug_writes=True)) as e:
        assert e.find("ssi") == [3, 6]


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=60), st.data())
def test_p_invariance(t, data):
    e = Engine.build(t, delta=data.draw(st.sampled_from([2, 3, 5])))
    a = data.draw(st.integers(0, len(t) - 1))
    b = data.draw(st.integers(a + 1, len(t)))
    pat = t[a:b] + data.draw(st.sampled_from(["", "a", "b"]))
    want = naive_interval(t, pat)
    assert {e.locate_exact(pat, p=p) for p in (1, 2, 3, 4, 8)} == {want}
