from samurai import EMPTY, Interval, build_index
from samurai.oracle import (naive_interval, naive_k_difference, naive_k_mismatch,
                            naive_lcp, naive_psi_merge, naive_suffix_array)


def test_sorted_suffixes_of_banana():
    # $ < a$ < ana$ < anana$ < banana$ < na$ < nana$
    assert naive_suffix_array("banana") == [7, 6, 4, 2, 1, 5, 3]


def test_naive_interval():
    assert naive_interval("banana", "ana") == Interval(3, 4)
    assert naive_interval("banana", "") == Interval(1, 7)
    assert naive_interval("banana", "nx") == EMPTY


def test_naive_lcp():
    assert naive_lcp("banana", 4, 2) == 3
    assert naive_lcp("banana", 1, 1) == 7


def test_naive_psi_merge():
    idx = build_index("banana")
    assert naive_psi_merge(idx, Interval(2, 4), 1, Interval(6, 7)) == Interval(3, 4)
    assert naive_psi_merge(idx, idx.full, 0, Interval(5, 5)) == Interval(5, 5)
    assert naive_psi_merge(idx, Interval(5, 5), 1, Interval(1, 1)) == EMPTY


def test_k_mismatch_oracle():
    assert naive_k_mismatch("banana", "nana", 1) == {1, 3}
    assert naive_k_mismatch("banana", "ana", 0) == {2, 4}
    assert naive_k_mismatch("ab", "abc", 3) == set()


def test_k_difference_oracle():
    assert naive_k_difference("banana", "nana", 1) == {1, 2, 3, 4}
    assert naive_k_difference("banana", "ana", 0) == {2, 4}
    # pattern no longer than k: empty window matches at every start
    assert naive_k_difference("abc", "zz", 2) == {1, 2, 3}
    assert naive_k_difference("ab", "zzzz", 3) == set()
