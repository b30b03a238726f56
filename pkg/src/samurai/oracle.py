"""Brute-force reference answers for testing.  Slow on purpose; keep off query paths."""

from __future__ import annotations

from .core_index import EMPTY, Interval, SuffixIndex, TextLike, interval, symbols_of


def naive_suffix_array(text: TextLike) -> list:
    """1-based SA of ``text`` plus sentinel, by sorting the suffixes outright."""
    syms, _ = symbols_of(text)
    # shift real symbols up so the sentinel (-1 here) sorts first
    t = syms + [-1]
    return [s + 1 for s in sorted(range(len(t)), key=lambda s: t[s:])]


def naive_interval(text: TextLike, pattern: TextLike) -> Interval:
    syms, _ = symbols_of(text)
    pat, _ = symbols_of(pattern)
    t = syms + [-1]
    sa = naive_suffix_array(text)
    m = len(pat)
    hits = [r for r, s in enumerate(sa, start=1) if t[s - 1:s - 1 + m] == pat]
    if not hits:
        return EMPTY
    assert hits == list(range(hits[0], hits[-1] + 1)), "prefix matches not contiguous"
    return Interval(hits[0], hits[-1])


def naive_lcp(text: TextLike, a: int, b: int) -> int:
    """lcp of the suffixes starting at text positions ``a`` and ``b`` (1-based)."""
    syms, _ = symbols_of(text)
    t = syms + [-1]
    if a == b:
        return len(t) - a + 1
    l = 0
    while a - 1 + l < len(t) and b - 1 + l < len(t) and t[a - 1 + l] == t[b - 1 + l]:
        l += 1
    return l


def naive_psi_merge(idx: SuffixIndex, i_alpha: Interval, alpha_len: int,
                    i_beta: Interval) -> Interval:
    if i_alpha.empty or i_beta.empty:
        return EMPTY
    keep = [i for i in range(i_alpha.b, i_alpha.e + 1)
            if i_beta.b <= idx.psi(i, alpha_len) <= i_beta.e]
    if not keep:
        return EMPTY
    assert keep == list(range(keep[0], keep[-1] + 1)), "Psi is not monotone on I(alpha)"
    return interval(keep[0], keep[-1])


def naive_k_mismatch(text: TextLike, pattern: TextLike, k: int) -> set:
    """Start positions of length-m windows with Hamming distance <= k."""
    t, _ = symbols_of(text)
    p, _ = symbols_of(pattern)
    m = len(p)
    out = set()
    for i in range(len(t) - m + 1):
        if sum(a != b for a, b in zip(t[i:i + m], p)) <= k:
            out.add(i + 1)
    return out


def naive_k_difference(text: TextLike, pattern: TextLike, k: int) -> set:
    """Start positions ``i`` with ``min_j ed(P, T[i..j]) <= k``, empty window allowed."""
    t, _ = symbols_of(text)
    p, _ = symbols_of(pattern)
    m = len(p)
    out = set()
    for i in range(len(t)):
        # row[j]: distance between P[:r] and T[i:i + j]
        row = list(range(len(t) - i + 1))
        for r in range(1, m + 1):
            new = [r] + [0] * (len(t) - i)
            for j in range(1, len(t) - i + 1):
                new[j] = min(row[j] + 1, new[j - 1] + 1,
                             row[j - 1] + (p[r - 1] != t[i + j - 1]))
            row = new
        if min(row) <= k:
            out.add(i + 1)
    return out
