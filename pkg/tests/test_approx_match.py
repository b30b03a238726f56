import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from samurai import Engine, Interval, ProbeStats, build_prefix_suffix, match_1_error, match_k_error
from samurai.approx_match import approximate
from samurai.oracle import naive_interval, naive_k_difference, naive_k_mismatch


@pytest.fixture(scope="module")
def banana():
    return Engine.build("banana", delta=2)


def test_prefix_suffix_banana(banana):
    t = build_prefix_suffix(banana, "ana", p=1)
    assert t.pref[1:] == [Interval(2, 4), Interval(3, 4), Interval(3, 4)]
    assert t.suf[1:4] == [Interval(3, 4), Interval(6, 7), Interval(2, 4)]
    one = build_prefix_suffix(banana, "n", p=3)
    assert one.pref[1:] == one.suf[1:2] == [Interval(6, 7)]


def test_prefix_suffix_against_oracle():
    rng = random.Random(4)
    for _ in range(30):
        text = "".join(rng.choice("abc") for _ in range(rng.randint(5, 128)))
        e = Engine.build(text, delta=rng.choice([2, 4, None]))
        for _ in range(5):
            m = rng.randint(1, 12)
            if rng.random() < 0.5:
                s = rng.randrange(max(1, len(text) - m))
                pat = text[s:s + m]
            else:
                pat = "".join(rng.choice("abc") for _ in range(m))
            for p in (1, 2, 4):
                t = build_prefix_suffix(e, pat, p=p)
                assert t.pref[t.m] == t.suf[1]
                for j in range(1, t.m + 1):
                    assert t.pref[j] == naive_interval(text, pat[:j])
                    assert t.suf[j] == naive_interval(text, pat[j - 1:])


def test_prefix_suffix_rounds():
    e = Engine.build("abaababaabaababaababa" * 3, delta=3)
    pat = "abaababaabaab"
    for p in (1, 2, 3, 4, 8, 13):
        stats = ProbeStats()
        build_prefix_suffix(e, pat, p=p, stats=stats)
        assert stats.merge_rounds == math.ceil(math.log2(p))
        assert all(c <= len(pat) for c in stats.merges_per_round)


def test_one_error_examples(banana):
    t = build_prefix_suffix(banana, "nana")
    assert match_1_error(banana, t, "mismatch") == [1, 3]
    assert match_1_error(banana, t, "difference") == [1, 2, 3, 4]
    ana = build_prefix_suffix(banana, "ana")
    assert match_1_error(banana, ana, "mismatch") == sorted(naive_k_mismatch("banana", "ana", 1))
    assert set(match_k_error(banana, ana, 0)) == {2, 4}


def test_k_error_examples(banana):
    t = build_prefix_suffix(banana, "nana")
    assert match_k_error(banana, t, 2, "mismatch") == sorted(naive_k_mismatch("banana", "nana", 2))
    with pytest.raises(ValueError):
        match_k_error(banana, t, -1)
    with pytest.raises(ValueError):
        match_k_error(banana, t, 1, "hamming")


def test_unknown_symbols_can_be_edited(banana):
    assert approximate(banana, "nzna", 1, "mismatch") == [3]
    assert approximate(banana, "zana", 1, "difference") == sorted(naive_k_difference("banana", "zana", 1))
    assert approximate(banana, "zz", 1, "mismatch") == []


def test_stats_and_dedup(banana):
    stats = ProbeStats()
    out = approximate(banana, "ana", 2, "difference", p=3, stats=stats)
    assert len(out) == len(set(out))
    assert stats.reported >= len(out)
    assert stats.scripts > 0


@settings(max_examples=120, deadline=None)
@given(st.text(alphabet="abcd", min_size=1, max_size=40), st.text(alphabet="abcd", min_size=1, max_size=5),
       st.integers(0, 2), st.sampled_from(["mismatch", "difference"]), st.sampled_from([1, 2, 4]))
def test_against_dp_oracle(text, pat, k, mode, p):
    e = Engine.build(text, delta=3)
    got = approximate(e, pat, k, mode, p=p)
    oracle = naive_k_mismatch if mode == "mismatch" else naive_k_difference
    assert got == sorted(oracle(text, pat, k))
    if k:
        assert set(approximate(e, pat, k - 1, mode)) <= set(got)
