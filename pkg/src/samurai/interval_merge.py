"""Merging suffix array intervals with sampled dictionaries over heavy paths.

Given ``I(alpha)``, ``|alpha|`` and ``I(beta)``, ``merge`` returns ``I(alpha beta)``:
the sub-range of ``I(alpha)`` whose ``Psi^|alpha|`` values fall in ``I(beta)``.
Instead of two binary searches over all of ``I(alpha)`` it uses

* ``gamma[v]`` for each light node ``v``: sampled ``(Psi^depth(v)[i], i)``,
* ``hl[l]`` / ``hr[l]`` for each heavy leaf ``l``: sampled ``(lcp(i, l), i)``
  left / right of ``l`` inside the interval of the head of its heavy path,
* ``child_samples[u]``: every ``delta``-th child of ``u`` by first symbol,

so every search is one dictionary query plus a binary search over at most
``delta`` positions.  Samples are the SA positions ``i = 1 (mod delta)``;
a rate larger than ``n`` samples nothing.
"""

from __future__ import annotations

from typing import Optional

from .core_index import EMPTY, Interval, SuffixIndex, interval
from .search import ProbeStats, first_true, last_true
from .static_dict import StaticYFastTrie
from .suffix_tree import HeavyPathInfo, SuffixTree


def default_delta(n: int) -> int:
    lg = max(1, (n - 1).bit_length())   # ceil(lg n)
    return max(4, lg * lg)


def _dict_seed(seed: int, kind: int, node: int) -> int:
    return (seed << 40) ^ (node << 2) ^ kind


class MergeIndex:
    def __init__(self, idx: SuffixIndex, tree: SuffixTree, hp: HeavyPathInfo,
                 delta: int, seed: int = 0):
        if delta < 2:
            raise ValueError("sampling rate delta must be >= 2")
        self.idx, self.tree, self.hp = idx, tree, hp
        self.delta = delta
        self.seed = seed
        self.gamma: dict = {}
        self.hl: dict = {}
        self.hr: dict = {}
        self.child_samples: dict = {}
        self.counts = {"gamma": 0, "hl": 0, "hr": 0, "child": 0,
                       "gamma_stored": 0, "hl_stored": 0, "hr_stored": 0}
        self._build()
        self.check_space()

    # ------------------------------------------------------------------ build

    def _samples(self, b: int, e: int) -> range:
        d = self.delta
        if d > self.idx.n:
            return range(0)
        return range(b + (1 - b) % d, e + 1, d)

    def _build(self) -> None:
        idx, tree, hp = self.idx, self.tree, self.hp
        n, d, seed = idx.n, self.delta, self.seed
        sa, isa = idx.sa, idx.isa
        nb, ne, depth = tree.nb, tree.ne, tree.depth
        counts = self.counts
        for v in range(1, tree.size + 1):
            if not hp.is_light[v]:
                continue
            samples = self._samples(nb[v], ne[v])
            if not samples:
                continue
            # gamma: keyed by Psi^depth(v); the past-end value only occurs at leaves
            dv = depth[v]
            pairs = []
            for i in samples:
                key = isa[sa[i] + dv]
                if key <= n:
                    pairs.append((key, i))
            if pairs:
                counts["gamma"] += len(pairs)
                counts["gamma_stored"] += len(pairs)
                self.gamma[v] = StaticYFastTrie(pairs, n, _dict_seed(seed, 0, v))
            # hl / hr for the heavy leaf of the path headed by v; lcp keys shifted by 1
            leaf = hp.heavy_leaf[v]
            left, right = [], []
            for i in samples:
                key = idx.lcp_pair(i, leaf) + 1
                if i <= leaf:
                    counts["hl"] += 1
                    if not left or key > left[-1][0]:
                        left.append((key, i))
                else:
                    counts["hr"] += 1
                    right.append((key, i))
            kept = []
            for key, i in reversed(right):
                if not kept or key > kept[-1][0]:
                    kept.append((key, i))
            if left:
                counts["hl_stored"] += len(left)
                self.hl[leaf] = StaticYFastTrie(left, n + 2, _dict_seed(seed, 1, leaf))
            if kept:
                counts["hr_stored"] += len(kept)
                self.hr[leaf] = StaticYFastTrie(kept, n + 2, _dict_seed(seed, 2, leaf))
        sigma = idx.sigma
        for u in range(n + 1, tree.size + 1):
            c = tree.num_children(u)
            if c < d:
                continue
            kids = tree.children(u)
            pairs = [(tree.first_symbol(u, kids[t]) + 1, t) for t in range(d - 1, c, d)]
            counts["child"] += len(pairs)
            self.child_samples[u] = StaticYFastTrie(pairs, sigma + 1, _dict_seed(seed, 3, u))

    def space_bounds(self) -> tuple:
        n = self.idx.n
        levels = n.bit_length()      # floor(lg n) + 1
        g = n / self.delta * levels
        return g, 2 * g

    def check_space(self) -> None:
        g_bound, h_bound = self.space_bounds()
        c = self.counts
        if c["gamma"] > g_bound:
            raise AssertionError(f"gamma holds {c['gamma']} entries, bound {g_bound:.2f}")
        if c["hl"] + c["hr"] > h_bound:
            raise AssertionError(f"hl+hr hold {c['hl'] + c['hr']} entries, bound {h_bound:.2f}")

    # ----------------------------------------------------------------- child

    def child(self, u: int, c: int, p: int = 1, stats: Optional[ProbeStats] = None) -> Optional[int]:
        """Child of ``u`` whose edge label starts with code ``c``, or None."""
        tree = self.tree
        lo, hi = tree.cstart[u], tree.cstart[u + 1]
        cnt = hi - lo
        if cnt == 0 or not 0 <= c <= self.idx.sigma:
            return None
        if stats is not None:
            stats.child_queries += 1
        d = self.delta
        kids = tree.kids
        samples = self.child_samples.get(u)
        if samples is None:
            first, last = 0, cnt - 1
        else:
            hit = samples.successor(c + 1, p, stats)
            if hit is None:
                first, last = (cnt // d) * d, cnt - 1
            else:
                last = hit[1]
                first = max(0, last - d + 1)
        du = tree.depth[u]
        nb = tree.nb
        char_at = self.idx.char_at

        def ge(t: int) -> bool:
            return char_at(nb[kids[lo + t]], du) >= c

        t = first_true(first, last, ge, p, stats)
        if t <= last:
            w = kids[lo + t]
            if char_at(nb[w], du) == c:
                return w
        return None

    # ----------------------------------------------------------------- merge

    def _scan(self, lo: int, hi: int, a: int, blo: int, bhi: int, p: int,
              stats: Optional[ProbeStats]) -> Interval:
        """Binary search ``[lo..hi]`` for the run with ``Psi^a`` inside ``[blo..bhi]``."""
        psi = self.idx.psi
        left = first_true(lo, hi, lambda i: psi(i, a) >= blo, p, stats)
        right = last_true(left, hi, lambda i: psi(i, a) <= bhi, p, stats)
        return interval(left, right)

    def merge(self, i_alpha: Interval, alpha_len: int, i_beta: Interval, p: int = 1,
              stats: Optional[ProbeStats] = None) -> Interval:
        """``I(alpha beta)`` from ``I(alpha)``, ``|alpha|`` and ``I(beta)``."""
        if i_alpha.empty or i_beta.empty:
            return EMPTY
        idx = self.idx
        if stats is not None:
            stats.merges += 1
        if alpha_len <= 0:
            if i_alpha != idx.full:
                raise ValueError("an empty left side must come with the full interval")
            return i_beta
        b, e = i_alpha
        if b == e:
            x = idx.psi(b, alpha_len)
            return i_alpha if i_beta.b <= x <= i_beta.e else EMPTY
        tree = self.tree
        v = tree.node_of_interval(i_alpha)
        if alpha_len > tree.depth[v]:
            raise ValueError(f"{i_alpha!r} is not the interval of a pattern of length {alpha_len}")
        if self.hp.is_light[v]:
            return self._light(v, alpha_len, i_beta.b, i_beta.e, p, stats)
        return self._heavy(v, alpha_len, i_alpha, i_beta, p, stats)

    merge_par = merge

    def _light(self, w: int, a: int, bb: int, be: int, p: int,
               stats: Optional[ProbeStats]) -> Interval:
        """Merge for ``I(alpha) = I(w)`` with ``w`` light and ``a <= depth(w)``.

        ``gamma[w]`` is keyed by ``Psi^depth(w)``.  When ``a < depth(w)`` every
        suffix of ``I(w)`` continues with the same ``g = depth(w) - a`` symbols
        after alpha, and ``Psi^g`` is increasing on that range, so the target
        range is mapped through ``Psi^g`` before querying the dictionary.
        """
        idx, tree = self.idx, self.tree
        psi = idx.psi
        lo_w, hi_w = tree.nb[w], tree.ne[w]
        if lo_w == hi_w:
            x = psi(lo_w, a)
            return Interval(lo_w, lo_w) if bb <= x <= be else EMPTY
        blo = max(bb, psi(lo_w, a))
        bhi = min(be, psi(hi_w, a))
        if blo > bhi:
            return EMPTY
        g_dict = self.gamma.get(w)
        if g_dict is None:
            # no sample inside I(w), so |I(w)| < delta
            return self._scan(lo_w, hi_w, a, blo, bhi, p, stats)
        g = tree.depth[w] - a
        klo, khi = psi(blo, g), psi(bhi, g)
        d = self.delta
        jl = g_dict.successor(klo, p, stats)
        if jl is not None and jl[0] <= khi:
            jr = g_dict.predecessor(khi, p, stats)
            left = first_true(max(lo_w, jl[1] - d + 1), jl[1],
                              lambda i: psi(i, a) >= blo, p, stats)
            right = last_true(jr[1], min(hi_w, jr[1] + d - 1),
                              lambda i: psi(i, a) <= bhi, p, stats)
            return interval(left, right)
        # no sampled key inside: the answer sits strictly between two
        # consecutive samples; at either end of I(w) the missing neighbour is
        # replaced by the interval boundary, which is less than delta away
        kl = g_dict.predecessor(klo, p, stats)
        lo = kl[1] + 1 if kl is not None else lo_w
        hi = jl[1] - 1 if jl is not None else hi_w
        return self._scan(lo, hi, a, blo, bhi, p, stats)

    def _heavy(self, v: int, a: int, i_alpha: Interval, i_beta: Interval, p: int,
               stats: Optional[ProbeStats]) -> Interval:
        idx, tree, hp = self.idx, self.tree, self.hp
        head = hp.head[v]
        if head not in self.gamma:
            # no sample below the head: |I(head)| < delta
            return self._scan(i_alpha.b, i_alpha.e, a, i_beta.b, i_beta.e, p, stats)
        leaf = hp.heavy_leaf[v]
        xk = idx.psi(leaf, a)
        if xk > idx.n:
            raise AssertionError("heavy leaf suffix shorter than alpha")
        bb, be = i_beta
        h = idx.lcp_pair(bb, be)          # depth of the locus of beta
        q = idx.lcp_pair(xk, bb)
        if q >= h:
            # the heavy leaf itself matches alpha beta
            target = a + h
            return Interval(self._left_reach(leaf, target, i_alpha, p, stats),
                            self._right_reach(leaf, target, i_alpha, p, stats))
        target = a + q
        dv = tree.depth[v]
        if target < dv:
            return EMPTY
        if target == dv:
            r = v
        else:
            r = self._node_at_depth(leaf, target, i_alpha, p, stats)
            if r is None:
                return EMPTY
        w = self.child(r, idx.char_at(bb, q), p, stats)
        if w is None:
            return EMPTY
        if stats is not None:
            stats.descents += 1
        if not hp.is_light[w]:
            raise AssertionError("descent left the heavy path through a heavy child")
        return self._light(w, a, bb, be, p, stats)

    def _left_reach(self, leaf: int, target: int, i_alpha: Interval, p: int,
                    stats: Optional[ProbeStats]) -> int:
        """First ``i <= leaf`` in ``I(alpha)`` with ``lcp(i, leaf) >= target``."""
        hl = self.hl.get(leaf)
        hit = hl.successor(target + 1, p, stats) if hl is not None else None
        anchor = hit[1] if hit is not None else leaf
        lcp_pair = self.idx.lcp_pair
        return first_true(max(i_alpha.b, anchor - self.delta + 1), anchor,
                          lambda i: lcp_pair(i, leaf) >= target, p, stats)

    def _right_reach(self, leaf: int, target: int, i_alpha: Interval, p: int,
                     stats: Optional[ProbeStats]) -> int:
        """Last ``i >= leaf`` in ``I(alpha)`` with ``lcp(i, leaf) >= target``."""
        hr = self.hr.get(leaf)
        hit = hr.successor(target + 1, p, stats) if hr is not None else None
        anchor = hit[1] if hit is not None else leaf
        lcp_pair = self.idx.lcp_pair
        return last_true(anchor, min(i_alpha.e, anchor + self.delta - 1),
                         lambda i: lcp_pair(i, leaf) >= target, p, stats)

    def _node_at_depth(self, leaf: int, target: int, i_alpha: Interval, p: int,
                       stats: Optional[ProbeStats]) -> Optional[int]:
        """Node of string depth ``target`` on the heavy path ending at ``leaf``."""
        lcp_pair = self.idx.lcp_pair
        i = self._left_reach(leaf, target, i_alpha, p, stats)
        if i < leaf and lcp_pair(i, leaf) == target:
            return self.tree.lca_leaves(i, leaf)
        j = self._right_reach(leaf, target, i_alpha, p, stats)
        if j > leaf and lcp_pair(j, leaf) == target:
            return self.tree.lca_leaves(leaf, j)
        return None


def build_merge_index(idx: SuffixIndex, tree: SuffixTree, hp: HeavyPathInfo,
                      delta: Optional[int] = None, seed: int = 0) -> MergeIndex:
    return MergeIndex(idx, tree, hp, default_delta(idx.n) if delta is None else delta, seed)
