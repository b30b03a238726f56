"""Probe counters and the p-way parallel binary search primitive.

A round of the parallel search places ``p`` probes that split the live range
into ``p + 1`` segments.  The probes of one round are independent reads, so
they are evaluated as one logical CREW step; only the round count matters
for the time bound (``O(1 + log_p n)``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Callable, Optional


@dataclass
class ProbeStats:
    yfast_queries: int = 0
    hash_probes: int = 0
    bucket_probes: int = 0
    search_rounds: int = 0
    search_probes: int = 0
    max_search_width: int = 0
    child_queries: int = 0
    merges: int = 0
    descents: int = 0
    scripts: int = 0
    reported: int = 0
    merge_rounds: int = 0
    merges_per_round: list = field(default_factory=list)

    def add(self, other: "ProbeStats") -> None:
        for f in fields(self):
            if f.name == "merges_per_round":
                self.merges_per_round.extend(other.merges_per_round)
            elif f.name == "max_search_width":
                self.max_search_width = max(self.max_search_width, other.max_search_width)
            else:
                setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def last_true(lo: int, hi: int, pred: Callable[[int], bool], p: int = 1,
              stats: Optional[ProbeStats] = None) -> int:
    """Largest ``x`` in ``[lo, hi]`` with ``pred(x)``, or ``lo - 1``.

    ``pred`` must be monotone (true on a prefix of the range).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    left, right = lo - 1, hi + 1
    if stats is not None and hi >= lo:
        stats.max_search_width = max(stats.max_search_width, hi - lo + 1)
    while right - left > 1:
        span = right - left
        k = min(p, span - 1)
        probes = [left + span * (t + 1) // (k + 1) for t in range(k)]
        # one slot per logical processor, reduced after the round
        slots = [pred(x) for x in probes]
        new_left, new_right = left, right
        for x, ok in zip(probes, slots):
            if ok:
                new_left = x
            else:
                new_right = x
                break
        left, right = new_left, new_right
        if stats is not None:
            stats.search_rounds += 1
            stats.search_probes += k
    return left


def first_true(lo: int, hi: int, pred: Callable[[int], bool], p: int = 1,
               stats: Optional[ProbeStats] = None) -> int:
    """Smallest ``x`` in ``[lo, hi]`` with ``pred(x)``, or ``hi + 1``.

    ``pred`` must be monotone (false on a prefix of the range).
    """
    return last_true(lo, hi, lambda x: not pred(x), p, stats) + 1
