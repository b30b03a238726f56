"""Static y-fast trie: x-fast levels over bucket representatives, sorted buckets.

Every level of the x-fast part is a collision-free two-level (FKS) hash
table built once from a seeded RNG, so lookups are O(1) worst case and the
structure answers identically for a given seed.  Buckets are plain sorted
lists of at most ``2 * lg U`` keys.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from typing import Any, Optional, Sequence

from .search import ProbeStats, last_true

_PRIME = (1 << 61) - 1
BUCKET_FACTOR = 2


class PerfectHash:
    """FKS static hash table over distinct non-negative int keys."""

    __slots__ = ("m", "a", "b", "offsets", "sizes", "ca", "cb", "slot_keys", "slot_vals")

    def __init__(self, keys: Sequence[int], values: Sequence[Any], rng: random.Random):
        m = max(1, len(keys))
        while True:
            a, b = rng.randrange(1, _PRIME), rng.randrange(_PRIME)
            groups = [[] for _ in range(m)]
            for t, x in enumerate(keys):
                groups[((a * x + b) % _PRIME) % m].append(t)
            if sum(len(g) ** 2 for g in groups) <= 4 * m:
                break
        self.m, self.a, self.b = m, a, b
        self.offsets, self.sizes, self.ca, self.cb = [], [], [], []
        slot_keys, slot_vals = [], []
        for g in groups:
            size = len(g) ** 2
            self.offsets.append(len(slot_keys))
            self.sizes.append(size)
            if not g:
                self.ca.append(0)
                self.cb.append(0)
                continue
            while True:
                ga, gb = rng.randrange(1, _PRIME), rng.randrange(_PRIME)
                table = [-1] * size
                ok = True
                for t in g:
                    s = ((ga * keys[t] + gb) % _PRIME) % size
                    if table[s] != -1:
                        ok = False
                        break
                    table[s] = t
                if ok:
                    break
            self.ca.append(ga)
            self.cb.append(gb)
            slot_keys.extend(keys[t] if t != -1 else -1 for t in table)
            slot_vals.extend(values[t] if t != -1 else None for t in table)
        self.slot_keys, self.slot_vals = slot_keys, slot_vals

    def get(self, x: int, default=None):
        j = ((self.a * x + self.b) % _PRIME) % self.m
        size = self.sizes[j]
        if not size:
            return default
        s = self.offsets[j] + ((self.ca[j] * x + self.cb[j]) % _PRIME) % size
        if self.slot_keys[s] == x:
            return self.slot_vals[s]
        return default

    def __len__(self) -> int:
        return sum(1 for k in self.slot_keys if k != -1)


class StaticYFastTrie:
    """Immutable predecessor/successor dictionary over keys in ``[1..U]``."""

    def __init__(self, pairs: Sequence[tuple], universe: int, seed: int = 0):
        U = 2
        while U < universe:
            U *= 2
        self.U = U
        self.w = U.bit_length() - 1
        self.seed = seed
        prev = 0
        for k, _ in pairs:
            if not 1 <= k <= U:
                raise ValueError(f"key {k} outside universe [1..{U}]")
            if k <= prev:
                raise ValueError("keys must be strictly increasing")
            prev = k
        self.keys = [k for k, _ in pairs]
        self.values = [v for _, v in pairs]
        cap = max(1, self.w)
        self.bucket_cap = BUCKET_FACTOR * cap
        # bucket t covers keys[starts[t]:starts[t + 1]]
        self.starts = list(range(0, len(self.keys), cap)) + [len(self.keys)]
        self.levels: list = []
        if len(self.starts) > 2:
            self._build_top(random.Random(seed))

    def _build_top(self, rng: random.Random) -> None:
        reps = [self.keys[s] - 1 for s in self.starts[:-1]]
        w = self.w
        for l in range(w + 1):
            shift = w - l
            spans: dict = {}
            for r, x in enumerate(reps):
                pre = x >> shift
                lo_hi = spans.get(pre)
                spans[pre] = (r, r) if lo_hi is None else (lo_hi[0], r)
            ks = list(spans)
            self.levels.append(PerfectHash(ks, [spans[k] for k in ks], rng))

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def num_buckets(self) -> int:
        return len(self.starts) - 1

    def _check(self, k: int) -> None:
        if not 1 <= k <= self.U:
            raise ValueError(f"query {k} outside universe [1..{self.U}]")

    def _rep_pred(self, x: int, p: int, stats: Optional[ProbeStats]) -> int:
        """Index of the last bucket whose representative is <= x (0-based key), or -1."""
        if not self.levels:
            return 0
        w = self.w
        levels = self.levels

        def present(l: int) -> bool:
            if stats is not None:
                stats.hash_probes += 1
            return levels[l].get(x >> (w - l)) is not None

        l = last_true(1, w, present, p)
        if l == w:
            return levels[w].get(x)[0]
        lo, hi = levels[l].get(x >> (w - l))
        if (x >> (w - l - 1)) & 1:
            return hi
        return lo - 1

    def _bucket_last_le(self, t: int, key: int, p: int, stats: Optional[ProbeStats]) -> int:
        """Global index of the last key <= ``key`` inside bucket ``t`` (or start - 1)."""
        lo, hi = self.starts[t], self.starts[t + 1] - 1
        keys = self.keys
        if p == 1 and stats is None:
            return bisect_right(keys, key, lo, hi + 1) - 1

        def le(j: int) -> bool:
            if stats is not None:
                stats.bucket_probes += 1
            return keys[j] <= key

        return last_true(lo, hi, le, p)

    def predecessor(self, k: int, p: int = 1, stats: Optional[ProbeStats] = None):
        """Entry with the largest key <= k, as ``(key, value)``, or None."""
        self._check(k)
        if stats is not None:
            stats.yfast_queries += 1
        if not self.keys:
            return None
        t = self._rep_pred(k - 1, p, stats)
        if t < 0:
            return None
        j = self._bucket_last_le(t, k, p, stats)
        if j < self.starts[t]:
            return None
        return self.keys[j], self.values[j]

    def successor(self, k: int, p: int = 1, stats: Optional[ProbeStats] = None):
        """Entry with the smallest key >= k, as ``(key, value)``, or None."""
        self._check(k)
        if stats is not None:
            stats.yfast_queries += 1
        if not self.keys:
            return None
        t = self._rep_pred(k - 1, p, stats)
        if t < 0:
            j = 0
        else:
            j = self._bucket_last_le(t, k - 1, p, stats) + 1
        if j >= len(self.keys):
            return None
        return self.keys[j], self.values[j]

    def lookup(self, k: int, p: int = 1, stats: Optional[ProbeStats] = None):
        hit = self.predecessor(k, p, stats)
        if hit is not None and hit[0] == k:
            return hit[1]
        return None

    predecessor_par = predecessor
    successor_par = successor


def build_dict(pairs: Sequence[tuple], universe: int, seed: int = 0) -> StaticYFastTrie:
    return StaticYFastTrie(pairs, universe, seed)
