"""Explicit suffix tree over SA + LCP, with heavy-path decomposition.

Node ids: leaves are ``1..n`` (leaf ``i`` is the ``i``-th leaf, so its id is
its leafrank); internal nodes are ``n+1..size``, the root is ``n+1``.  All
per-node data lives in flat lists indexed by node id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_index import Interval, SuffixIndex


@dataclass
class SuffixTree:
    idx: SuffixIndex
    root: int
    size: int           # largest node id
    parent: list
    depth: list         # string depth (pathlabel length)
    nb: list            # interval begin
    ne: list            # interval end
    cstart: list        # children of v are kids[cstart[v]:cstart[v + 1]]
    kids: list
    boundary: list      # boundary[i] = lca(leaf i, leaf i + 1), i in 1..n-1

    @property
    def n(self) -> int:
        return self.idx.n

    def is_leaf(self, v: int) -> bool:
        return v <= self.idx.n

    def interval(self, v: int) -> Interval:
        return Interval(self.nb[v], self.ne[v])

    def children(self, v: int) -> list:
        return self.kids[self.cstart[v]:self.cstart[v + 1]]

    def num_children(self, v: int) -> int:
        return self.cstart[v + 1] - self.cstart[v]

    def first_symbol(self, u: int, w: int) -> int:
        """First code on the edge from ``u`` down to its child ``w``."""
        return self.idx.char_at(self.nb[w], self.depth[u])

    def leafrank(self, v: int) -> int:
        if not 1 <= v <= self.idx.n:
            raise ValueError(f"node {v} is not a leaf")
        return v

    def pathlabel_length(self, v: int) -> int:
        return self.depth[v]

    def pathlabel(self, v: int) -> list:
        start = self.idx.sa[self.nb[v]] - 1
        return self.idx.text[start:start + self.depth[v]]

    def lca_leaves(self, i: int, j: int) -> int:
        if i == j:
            return i
        if i > j:
            i, j = j, i
        if j == i + 1:
            return self.boundary[i]
        return self.boundary[self.idx.lcp_argmin(i, j - 1)]

    def lca(self, u: int, v: int) -> int:
        if u == v:
            return u
        return self.lca_leaves(min(self.nb[u], self.nb[v]), max(self.ne[u], self.ne[v]))

    def node_of_interval(self, ivl: Interval) -> int:
        b, e = ivl
        if not 1 <= b <= e <= self.idx.n:
            raise ValueError(f"{ivl!r} is not a valid SA interval")
        return self.lca_leaves(b, e)


def build_suffix_tree(idx: SuffixIndex) -> SuffixTree:
    """Bottom-up lcp-interval construction; children come out in SA order."""
    n = idx.n
    sa, lcp = idx.sa, idx.lcp
    cap = 2 * n + 1
    parent = [0] * cap
    depth = [0] * cap
    nb = [0] * cap
    ne = [0] * cap
    for i in range(1, n + 1):
        depth[i] = n - sa[i] + 1
        nb[i] = ne[i] = i
    root = n + 1
    nb[root], ne[root] = 1, n
    boundary = [0] * n
    stack = [root]
    nxt = n + 2
    for i in range(1, n + 1):
        last = i
        l = lcp[i] if i < n else 0
        while l < depth[stack[-1]]:
            top = stack.pop()
            parent[last] = top
            ne[top] = i
            last = top
        top = stack[-1]
        if l > depth[top]:
            new = nxt
            nxt += 1
            depth[new] = l
            nb[new] = nb[last]
            parent[last] = new
            stack.append(new)
        else:
            parent[last] = top
        if i < n:
            boundary[i] = stack[-1]
    size = nxt - 1
    del parent[size + 1:], depth[size + 1:], nb[size + 1:], ne[size + 1:]

    par = np.asarray(parent, dtype=np.int64)
    starts = np.asarray(nb, dtype=np.int64)
    nodes = np.arange(size + 1, dtype=np.int64)
    mask = (nodes >= 1) & (nodes != root)
    order = np.lexsort((starts[mask], par[mask]))
    kids = nodes[mask][order]
    counts = np.bincount(par[mask], minlength=size + 2)
    cstart = np.concatenate(([0], np.cumsum(counts)))
    return SuffixTree(idx, root, size, parent, depth, nb, ne,
                      cstart.tolist(), kids.tolist(), boundary)


@dataclass
class HeavyPathInfo:
    level: list
    head: list
    heavy_leaf: list
    heavy_child: list   # 0 for leaves
    is_light: list

    @property
    def max_level(self) -> int:
        return max(self.level[1:])


def heavy_path_decompose(tree: SuffixTree) -> HeavyPathInfo:
    """Heavy child = most leaves below it; ties go to the smallest interval start."""
    size = tree.size
    nb, ne = tree.nb, tree.ne
    kids, cstart = tree.kids, tree.cstart
    heavy_child = [0] * (size + 1)
    level = [0] * (size + 1)
    head = [0] * (size + 1)
    is_light = [False] * (size + 1)
    heavy_leaf = [0] * (size + 1)

    root = tree.root
    level[root] = 1
    head[root] = root
    is_light[root] = True
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        lo, hi = cstart[v], cstart[v + 1]
        if lo == hi:
            continue
        best, best_size = 0, -1
        for t in range(lo, hi):
            w = kids[t]
            s = ne[w] - nb[w] + 1
            if s > best_size:
                best, best_size = w, s
        heavy_child[v] = best
        for t in range(lo, hi):
            w = kids[t]
            if w == best:
                level[w] = level[v]
                head[w] = head[v]
            else:
                level[w] = level[v] + 1
                head[w] = w
                is_light[w] = True
            stack.append(w)
    for v in reversed(order):
        h = heavy_child[v]
        heavy_leaf[v] = heavy_leaf[h] if h else v
    return HeavyPathInfo(level, head, heavy_leaf, heavy_child, is_light)
