"""CREW-PRAM emulation and the merge-tree exact matcher.

Processors of the PRAM model map to logical tasks multiplexed onto a fixed
thread pool.  A phase is one ``run_round`` call: every task reads the shared
(immutable) index and writes only its own pre-allocated result slot; the
call returns after all tasks finished, which is the barrier between rounds.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core_index import EMPTY, Interval, SuffixIndex, TextLike, build_index
from .interval_merge import MergeIndex, build_merge_index
from .search import ProbeStats, last_true
from .suffix_tree import HeavyPathInfo, SuffixTree, build_suffix_tree, heavy_path_decompose

WORKERS_ENV = "SAMURAI_WORKERS"


@dataclass
class PramConfig:
    p: int = 1
    debug_writes: bool = False

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("worker count must be >= 1")

    @classmethod
    def from_env(cls, p: Optional[int] = None, debug_writes: bool = False) -> "PramConfig":
        """Flag value wins over ``SAMURAI_WORKERS``, which wins over the CPU count."""
        if p is None:
            env = os.environ.get(WORKERS_ENV)
            p = int(env) if env else (os.cpu_count() or 1)
        return cls(p, debug_writes)


class WriteConflict(RuntimeError):
    pass


class RoundSlots:
    """Per-round result cells; in debug mode each cell may be written once, by its owner."""

    def __init__(self, size: int, track: bool = False):
        self.values: list = [None] * size
        self.track = track
        self.writers: list = [None] * size if track else []

    def write(self, slot: int, writer: int, value) -> None:
        if self.track:
            if writer != slot:
                raise WriteConflict(f"task {writer} wrote slot {slot}")
            if self.writers[slot] is not None:
                raise WriteConflict(f"slot {slot} written twice")
            self.writers[slot] = writer
        self.values[slot] = value


class WorkerPool:
    def __init__(self, p: int):
        self.p = p
        self._executor = ThreadPoolExecutor(max_workers=p) if p > 1 else None
        self.rounds = 0

    def run_round(self, tasks: Sequence[Callable], track: bool = False,
                  guard: Optional[Callable[[], object]] = None) -> list:
        """Run one phase; returns results in task order once all tasks are done."""
        slots = RoundSlots(len(tasks), track)
        before = guard() if guard is not None else None

        def run(t: int) -> None:
            slots.write(t, t, tasks[t]())

        if self._executor is None or len(tasks) <= 1:
            for t in range(len(tasks)):
                run(t)
        else:
            for f in [self._executor.submit(run, t) for t in range(len(tasks))]:
                f.result()
        if guard is not None and guard() != before:
            raise WriteConflict("shared structures changed during a round")
        self.rounds += 1
        return slots.values

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None


def parallel_binary_search(values: Sequence, target, cfg: "PramConfig | int" = 1,
                           stats: Optional[ProbeStats] = None) -> int:
    """Number of leading elements of sorted ``values`` that are <= ``target``."""
    p = cfg.p if isinstance(cfg, PramConfig) else cfg
    return last_true(1, len(values), lambda r: values[r - 1] <= target, p, stats)


def split_lengths(m: int, parts: int) -> list:
    """First ``m % parts`` pieces get the extra symbol."""
    q, r = divmod(m, parts)
    return [q + 1 if t < r else q for t in range(parts)]


def occurrences(idx: SuffixIndex, ivl: Interval) -> list:
    if ivl.empty:
        return []
    return sorted(idx.sa[ivl.b:ivl.e + 1])


class Engine:
    """All query structures for one text plus the worker pool that drives them."""

    def __init__(self, idx: SuffixIndex, tree: SuffixTree, hp: HeavyPathInfo,
                 mi: MergeIndex, cfg: Optional[PramConfig] = None):
        self.idx, self.tree, self.hp, self.mi = idx, tree, hp, mi
        self.cfg = cfg or PramConfig()
        self._pool: Optional[WorkerPool] = None

    @classmethod
    def build(cls, text: TextLike, delta: Optional[int] = None, seed: int = 0,
              cfg: Optional[PramConfig] = None) -> "Engine":
        idx = build_index(text)
        return cls.from_index(idx, delta, seed, cfg)

    @classmethod
    def from_index(cls, idx: SuffixIndex, delta: Optional[int] = None, seed: int = 0,
                   cfg: Optional[PramConfig] = None) -> "Engine":
        tree = build_suffix_tree(idx)
        hp = heavy_path_decompose(tree)
        mi = build_merge_index(idx, tree, hp, delta, seed)
        return cls(idx, tree, hp, mi, cfg)

    def __enter__(self) -> "Engine":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        if self._pool is not None:
            self._pool.close()
            self._pool = None

    @property
    def pool(self) -> WorkerPool:
        if self._pool is None:
            self._pool = WorkerPool(self.cfg.p)
        return self._pool

    @property
    def delta(self) -> int:
        return self.mi.delta

    def _fingerprint(self) -> tuple:
        idx = self.idx
        return (hash(tuple(idx.sa)), hash(tuple(idx.isa)), hash(tuple(idx.lcp)),
                len(self.mi.gamma), len(self.mi.hl), len(self.mi.hr))

    def run_round(self, tasks: Sequence[Callable]) -> list:
        debug = self.cfg.debug_writes
        return self.pool.run_round(tasks, track=debug,
                                   guard=self._fingerprint if debug else None)

    # ------------------------------------------------------------ primitives

    def merge(self, i_alpha: Interval, alpha_len: int, i_beta: Interval, p: int = 1,
              stats: Optional[ProbeStats] = None) -> Interval:
        return self.mi.merge(i_alpha, alpha_len, i_beta, p, stats)

    def extend(self, ivl: Interval, length: int, c: int, p: int = 1,
               stats: Optional[ProbeStats] = None) -> Interval:
        """``I(Xc)`` from ``I(X)`` and ``|X|`` by one step down the suffix tree."""
        if ivl.empty:
            return EMPTY
        tree = self.tree
        if length == 0:
            v = tree.root
        else:
            v = tree.node_of_interval(ivl)
            if tree.depth[v] > length:
                return ivl if self.idx.char_at(ivl.b, length) == c else EMPTY
        w = self.mi.child(v, c, p, stats)
        return EMPTY if w is None else Interval(tree.nb[w], tree.ne[w])

    # ----------------------------------------------------------- exact match

    def locate_exact(self, pattern: TextLike, p: Optional[int] = None,
                     stats: Optional[ProbeStats] = None, encoded: bool = False) -> Interval:
        """SA interval of ``pattern`` via the merge tree over ``p`` subpatterns."""
        idx = self.idx
        codes = pattern if encoded else idx.encode(pattern)
        if codes is None:
            return EMPTY
        m = len(codes)
        if m == 0:
            return idx.full
        p_eff = min(p or self.cfg.p, m)
        pieces, start = [], 0
        for size in split_lengths(m, p_eff):
            pieces.append(codes[start:start + size])
            start += size
        ivls = self.run_round([lambda s=s: idx.interval_of(s, encoded=True) for s in pieces])
        lens = [len(s) for s in pieces]
        k = 0
        while len(ivls) > 1:
            k += 1
            procs = 1 << k
            tasks = []
            for t in range(0, len(ivls), 2):
                if t + 1 < len(ivls):
                    def task(a=ivls[t], la=lens[t], b=ivls[t + 1]):
                        st = ProbeStats()
                        return self.mi.merge(a, la, b, procs, st), st
                else:
                    # odd one out: identity merge
                    def task(a=ivls[t]):
                        return a, ProbeStats()
                tasks.append(task)
            out = self.run_round(tasks)
            ivls = [r[0] for r in out]
            lens = [sum(lens[t:t + 2]) for t in range(0, len(lens), 2)]
            if stats is not None:
                for _, st in out:
                    stats.add(st)
                stats.merge_rounds += 1
                stats.merges_per_round.append(len(tasks))
        return ivls[0]

    def find(self, pattern: TextLike, p: Optional[int] = None) -> list:
        return occurrences(self.idx, self.locate_exact(pattern, p))
