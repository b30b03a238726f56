"""Suffix array, inverse suffix array, LCP array and Psi access.

All positions exposed by this module are 1-based.  The text is stored with a
unique sentinel (code 0) appended at position ``n``; user symbols are
remapped to codes ``1..sigma`` in sorted order so the suffix order over codes
equals the suffix order over the original symbols.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Protocol, Sequence, Union

import numpy as np

TextLike = Union[str, bytes, bytearray, memoryview, Sequence[int]]


class IndexBuildError(ValueError):
    pass


class Interval(NamedTuple):
    """Closed range ``[b..e]`` of suffix array positions."""

    b: int
    e: int

    @property
    def empty(self) -> bool:
        return self.b > self.e

    @property
    def size(self) -> int:
        return self.e - self.b + 1 if self.b <= self.e else 0

    def contains(self, x: int) -> bool:
        return self.b <= x <= self.e

    def __repr__(self) -> str:
        return "Interval(empty)" if self.empty else f"[{self.b}..{self.e}]"


EMPTY = Interval(1, 0)


def interval(b: int, e: int) -> Interval:
    return Interval(b, e) if b <= e else EMPTY


def symbols_of(text: TextLike) -> tuple[list[int], str]:
    """Return the symbol list of ``text`` and its kind tag."""
    if isinstance(text, str):
        return [ord(c) for c in text], "str"
    if isinstance(text, (bytes, bytearray, memoryview)):
        return list(bytes(text)), "bytes"
    return [int(c) for c in text], "ints"


class SAAccess(Protocol):
    """What the query layers need from a suffix array backend.

    The plain arrays below give O(1) access; a compressed backend with slower
    ``psi``/``lcp_pair`` could be dropped in behind the same methods.
    """

    n: int

    def psi(self, i: int, k: int) -> int: ...

    def lcp_pair(self, i: int, j: int) -> int: ...

    def char_at(self, i: int, offset: int) -> int: ...


@dataclass
class SuffixIndex:
    text: list          # codes, 0-based, sentinel 0 last
    alphabet: list      # original symbols; code c stands for alphabet[c - 1]
    kind: str
    sa: list            # sa[1..n]; sa[0] unused
    isa: list           # isa[1..n], isa[n + 1] = n + 1 (past-end marker)
    lcp: list           # lcp[1..n-1]; lcp[i] = lcp of suffixes sa[i], sa[i+1]
    _codes: dict = field(repr=False, default_factory=dict)
    _rmq: list = field(repr=False, default_factory=list)

    def __post_init__(self) -> None:
        if not self._codes:
            self._codes = {s: c for c, s in enumerate(self.alphabet, 1)}
        if not self._rmq:
            self._rmq = _sparse_argmin(self.lcp)

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def past_end(self) -> int:
        return len(self.text) + 1

    @property
    def full(self) -> Interval:
        return Interval(1, len(self.text))

    def encode(self, pattern: TextLike, strict: bool = True) -> Optional[list]:
        """Map a pattern to codes.

        A symbol outside the alphabet makes the result ``None``, or with
        ``strict=False`` is mapped to ``sigma + 1``, which matches nothing.
        """
        syms, _ = symbols_of(pattern)
        codes = self._codes
        missing = len(self.alphabet) + 1
        out = []
        for s in syms:
            c = codes.get(s)
            if c is None:
                if strict:
                    return None
                c = missing
            out.append(c)
        return out

    def decode(self, codes: Sequence[int]) -> list:
        return [self.alphabet[c - 1] for c in codes]

    def psi(self, i: int, k: int) -> int:
        """Position in SA of the suffix starting ``k`` symbols after suffix ``sa[i]``.

        Returns ``n + 1`` when that suffix would start just past the sentinel.
        """
        pos = self.sa[i] + k
        if pos > len(self.text) + 1:
            raise ValueError(f"psi shift {k} runs past the text end for SA position {i}")
        return self.isa[pos]

    def suffix_len(self, i: int) -> int:
        return len(self.text) - self.sa[i] + 1

    def char_at(self, i: int, offset: int) -> int:
        """Code of the symbol ``offset`` positions into suffix ``sa[i]`` (0 = sentinel)."""
        return self.text[self.sa[i] - 1 + offset]

    def lcp_argmin(self, i: int, j: int) -> int:
        """Position ``m`` in ``[i..j]`` minimising ``lcp[m]`` (1 <= i <= j <= n-1)."""
        k = (j - i + 1).bit_length() - 1
        row = self._rmq[k]
        a = row[i - 1]
        b = row[j - (1 << k)]
        lcp = self.lcp
        return a if lcp[a] <= lcp[b] else b

    def lcp_pair(self, i: int, j: int) -> int:
        """LCP length of the suffixes at SA positions ``i`` and ``j``."""
        if i == j:
            return len(self.text) - self.sa[i] + 1
        if i > j:
            i, j = j, i
        if j == i + 1:
            return self.lcp[i]
        return self.lcp[self.lcp_argmin(i, j - 1)]

    def interval_of(self, pattern: Union[TextLike, list, None], encoded: bool = False) -> Interval:
        """SA interval of all suffixes prefixed by ``pattern`` (binary search, O(m lg n))."""
        if pattern is None:
            return EMPTY
        codes = pattern if encoded else self.encode(pattern)
        if codes is None:
            return EMPTY
        m = len(codes)
        n = len(self.text)
        if m == 0:
            return Interval(1, n)
        text = self.text

        def key(s: int) -> list:
            return text[s - 1:s - 1 + m]

        lo = bisect_left(self.sa, codes, 1, n + 1, key=key)
        hi = bisect_right(self.sa, codes, lo, n + 1, key=key)
        return interval(lo, hi - 1)


def _sparse_argmin(lcp: list) -> list:
    """Sparse table of argmin positions over ``lcp[1..len-1]`` (1-based values)."""
    m = len(lcp) - 1
    if m <= 0:
        return []
    vals = np.asarray(lcp[1:], dtype=np.int64)
    cur = np.arange(1, m + 1, dtype=np.int64)
    rows = []
    width = 1
    while True:
        rows.append(_to_array(cur))
        if width * 2 > m:
            break
        take = m - 2 * width + 1
        a, b = cur[:take], cur[width:width + take]
        cur = np.where(vals[a - 1] <= vals[b - 1], a, b)
        width *= 2
    return rows


def _to_array(a: np.ndarray) -> array:
    out = array("l")
    out.frombytes(a.astype(np.dtype("l")).tobytes())
    return out


def _suffix_array(codes: np.ndarray) -> np.ndarray:
    """0-based suffix array by prefix doubling over dense ranks."""
    n = len(codes)
    _, rank = np.unique(codes, return_inverse=True)
    rank = rank.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while rank.max() < n - 1:
        second = np.zeros(n, dtype=np.int64)
        if k < n:
            second[:n - k] = rank[k:] + 1
        key = rank * (n + 1) + second
        sa = np.argsort(key, kind="stable")
        sk = key[sa]
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.concatenate(([0], np.cumsum(sk[1:] != sk[:-1])))
        rank = new
        k *= 2
    return sa


def _kasai(text: list, sa0: list, rank0: list) -> list:
    n = len(text)
    out = [0] * max(n - 1, 0)
    h = 0
    for i in range(n):
        r = rank0[i]
        if r == n - 1:
            h = 0
            continue
        j = sa0[r + 1]
        while text[i + h] == text[j + h]:
            h += 1
        out[r] = h
        if h:
            h -= 1
    return out


def build_index(text: TextLike) -> SuffixIndex:
    """Build SA, ISA, LCP and the LCP range-minimum table for ``text``."""
    syms, kind = symbols_of(text)
    if not syms:
        raise IndexBuildError("cannot index an empty text")
    alphabet = sorted(set(syms))
    codes = {s: c for c, s in enumerate(alphabet, 1)}
    enc = [codes[s] for s in syms]
    enc.append(0)
    n = len(enc)
    sa0 = _suffix_array(np.asarray(enc, dtype=np.int64)).tolist()
    rank0 = [0] * n
    for r, s in enumerate(sa0):
        rank0[s] = r
    lcp0 = _kasai(enc, sa0, rank0)
    sa = [0] + [s + 1 for s in sa0]
    isa = [0] + [r + 1 for r in rank0] + [n + 1]
    lcp = [0] + lcp0
    return SuffixIndex(enc, alphabet, kind, sa, isa, lcp, codes)
