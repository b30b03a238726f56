"""k-mismatch and k-difference matching over modified patterns.

Every pattern ``P'`` within distance ``k`` of ``P`` is produced by a
canonical edit script, its interval is assembled from the precomputed
prefix/suffix intervals of ``P`` plus child steps and merges, and the
positions of all non-empty intervals are reported once.

Canonical scripts: edits at strictly increasing positions (an insertion run
sits in the gap before ``P[i]``), a substitution never keeps the symbol, an
insertion is never directly followed by deleting the next symbol and a
deletion is never directly followed by an insertion in the next gap.  Any
optimal alignment already has this shape, so nothing within distance ``k``
is lost; the few remaining duplicates are removed when positions are merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core_index import EMPTY, Interval, TextLike
from .parallel_engine import Engine, split_lengths
from .search import ProbeStats

MODES = ("mismatch", "difference")
SUB, DEL, INS = 0, 1, 2


@dataclass
class PrefixSuffixTables:
    pattern: list   # codes
    pref: list      # pref[j] = I(P[1..j]), pref[0] = full interval
    suf: list       # suf[i] = I(P[i..m]), suf[m + 1] = full interval

    @property
    def m(self) -> int:
        return len(self.pattern)


def build_prefix_suffix(engine: Engine, pattern: TextLike, p: Optional[int] = None,
                        stats: Optional[ProbeStats] = None, encoded: bool = False) -> PrefixSuffixTables:
    """Intervals of all prefixes and suffixes of ``pattern``.

    Blocks of the pattern are handled in parallel first; then ``ceil(lg p)``
    rounds pair up neighbouring groups, merging the whole left group with
    every prefix of the right group and every suffix of the left group with
    the whole right group.
    """
    idx = engine.idx
    # symbols outside the alphabet get a code no text position carries; they
    # can still be substituted or deleted away
    codes = pattern if encoded else idx.encode(pattern, strict=False)
    full = idx.full
    m = len(codes)
    if m == 0:
        return PrefixSuffixTables([], [full], [full])
    p_eff = min(p or engine.cfg.p, m)
    merge = engine.mi.merge

    def block(lo: int, hi: int):
        st = ProbeStats()
        prefs, cur = [], full
        for j in range(lo, hi):
            cur = engine.extend(cur, j - lo, codes[j], 1, st)
            prefs.append(cur)
        sufs = [EMPTY] * (hi - lo)
        right = full
        for j in range(hi - 1, lo - 1, -1):
            single = engine.extend(full, 0, codes[j], 1, st)
            right = single if j == hi - 1 else merge(single, 1, right, 1, st)
            sufs[j - lo] = right
        return prefs, sufs, st

    bounds, start = [], 0
    for size in split_lengths(m, p_eff):
        bounds.append((start, start + size))
        start += size
    out = engine.run_round([lambda lo=lo, hi=hi: block(lo, hi) for lo, hi in bounds])
    groups = []
    for (lo, hi), (prefs, sufs, st) in zip(bounds, out):
        groups.append((hi - lo, prefs, sufs))
        if stats is not None:
            stats.add(st)

    while len(groups) > 1:
        tasks, plan = [], []
        for g in range(0, len(groups), 2):
            if g + 1 == len(groups):
                plan.append(None)
                continue
            (ll, lp, ls), (rl, rp, rs) = groups[g], groups[g + 1]
            base = len(tasks)
            whole_left, whole_right = lp[-1], rs[0]
            for r in rp:
                tasks.append(lambda a=whole_left, la=ll, b=r: _merge_task(merge, a, la, b))
            for j, l in enumerate(ls):
                tasks.append(lambda a=l, la=ll - j, b=whole_right: _merge_task(merge, a, la, b))
            plan.append((base, len(rp), len(ls)))
        res = engine.run_round(tasks)
        merged = []
        for g, entry in zip(range(0, len(groups), 2), plan):
            if entry is None:
                merged.append(groups[g])
                continue
            base, nr, nl = entry
            (ll, lp, ls), (rl, rp, rs) = groups[g], groups[g + 1]
            new_p = lp + [res[base + t][0] for t in range(nr)]
            new_s = [res[base + nr + t][0] for t in range(nl)] + rs
            merged.append((ll + rl, new_p, new_s))
        if stats is not None:
            for _, st in res:
                stats.add(st)
            stats.merge_rounds += 1
            stats.merges_per_round.append(len(tasks))
        groups = merged
    _, prefs, sufs = groups[0]
    return PrefixSuffixTables(list(codes), [full] + prefs, [full] + sufs + [full])


def _merge_task(merge, a: Interval, la: int, b: Interval):
    st = ProbeStats()
    return merge(a, la, b, 1, st), st


class _Search:
    """Depth-first enumeration of canonical scripts below one grid cell."""

    def __init__(self, engine: Engine, tables: PrefixSuffixTables, k: int, mode: str,
                 stats: ProbeStats):
        self.engine = engine
        self.tables = tables
        self.k = k
        self.difference = mode == "difference"
        self.stats = stats
        self.sigma = range(1, engine.idx.sigma + 1)
        self.out: list = []

    def report(self, ivl: Interval) -> None:
        if ivl.empty:
            return
        idx = self.engine.idx
        n = idx.n
        self.stats.scripts += 1
        hits = [s for s in idx.sa[ivl.b:ivl.e + 1] if s != n]
        self.stats.reported += len(hits)
        self.out.extend(hits)

    def finish(self, x: Interval, t: int, i: int) -> None:
        tables = self.tables
        if i == tables.m + 1:
            self.report(x)
        else:
            self.report(self.engine.mi.merge(x, t, tables.suf[i], 1, self.stats))

    def apply(self, y: Interval, ty: int, j: int, op: int, c: int, edits: int) -> None:
        """Apply one edit at position ``j`` to the interval ``y`` of the text so far."""
        if op == DEL:
            self.dfs(y, ty, j + 1, edits, DEL)
            return
        z = self.engine.extend(y, ty, c, 1, self.stats)
        if not z.empty:
            self.dfs(z, ty + 1, j + 1 if op == SUB else j, edits, op)

    def dfs(self, x: Interval, t: int, i: int, edits: int, last: int) -> None:
        if x.empty:
            return
        self.finish(x, t, i)
        if edits == self.k:
            return
        m = self.tables.m
        pat = self.tables.pattern
        y, ty = x, t
        for j in range(i, m + 2):
            if j > i:
                y = self.engine.extend(y, ty, pat[j - 2], 1, self.stats)
                ty += 1
                if y.empty:
                    return
            for op, c in self.cells_at(j, at_gap_start=j == i, last=last):
                self.apply(y, ty, j, op, c, edits + 1)

    def cells_at(self, j: int, at_gap_start: bool = False, last: int = -1):
        m = self.tables.m
        if j <= m:
            pj = self.tables.pattern[j - 1]
            for c in self.sigma:
                if c != pj:
                    yield SUB, c
            if self.difference and not (at_gap_start and last == INS):
                yield DEL, 0
        elif not self.difference:
            return
        if self.difference and not (at_gap_start and last == DEL):
            for c in self.sigma:
                yield INS, c


def match_k_error(engine: Engine, tables: PrefixSuffixTables, k: int, mode: str = "difference",
                  p: Optional[int] = None, stats: Optional[ProbeStats] = None) -> list:
    """Sorted start positions of all occurrences within distance ``k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    m = tables.m
    probe = _Search(engine, tables, k, mode, ProbeStats())
    # grid cells: (first edit position, operation, symbol), in enumeration order
    cells = [None]
    if k > 0:
        for j in range(1, m + 2):
            cells.extend((j, op, c) for op, c in probe.cells_at(j))
    workers = max(1, min(p or engine.cfg.p, len(cells)))
    shares = [cells[w::workers] for w in range(workers)]

    def work(share: list):
        s = _Search(engine, tables, k, mode, ProbeStats())
        for cell in share:
            if cell is None:
                s.report(tables.pref[m])
                continue
            j, op, c = cell
            s.apply(tables.pref[j - 1], j - 1, j, op, c, 1)
        return s.out, s.stats

    results = engine.run_round([lambda sh=sh: work(sh) for sh in shares])
    found = set()
    for out, st in results:
        found.update(out)
        if stats is not None:
            stats.add(st)
    return sorted(found)


def match_1_error(engine: Engine, tables: PrefixSuffixTables, mode: str = "difference",
                  p: Optional[int] = None, stats: Optional[ProbeStats] = None) -> list:
    return match_k_error(engine, tables, 1, mode, p, stats)


def approximate(engine: Engine, pattern: TextLike, k: int, mode: str = "difference",
                p: Optional[int] = None, stats: Optional[ProbeStats] = None) -> list:
    """Prefix/suffix precompute followed by the k-error enumeration."""
    tables = build_prefix_suffix(engine, pattern, p, stats)
    return match_k_error(engine, tables, k, mode, p, stats)
